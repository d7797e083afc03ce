import json

import pytest

import fuzzyrisk as fr


@pytest.fixture(scope="session")
def mobile_hierarchy_path():
    return fr.data_path("mobile_devices.json")


@pytest.fixture(scope="session")
def mobile_tree(mobile_hierarchy_path):
    return fr.load_hierarchy_file(mobile_hierarchy_path)


@pytest.fixture(scope="session")
def network_tree():
    return fr.load_hierarchy_file(fr.data_path("network_security.json"))


@pytest.fixture(scope="session")
def lost_devices_fis(mobile_tree):
    return mobile_tree.node("LostDevices").fis


@pytest.fixture(scope="session")
def questionnaire_doc():
    return json.loads(fr.data_path("questionnaire_mobile_devices.json").read_text())


@pytest.fixture(scope="session")
def questions(questionnaire_doc, mobile_tree):
    return fr.load_questionnaire(questionnaire_doc, mobile_tree)


@pytest.fixture(scope="session")
def example_answers():
    return json.loads(fr.data_path("answers_example.json").read_text())


@pytest.fixture(scope="session")
def default_vars():
    return [
        fr.default_variable("Group_1"),
        fr.default_variable("Group_2"),
        fr.default_variable("LostDevices"),
    ]
