"""Frozen fixtures shared across test modules.

EXPERT_RULES_TEXT is the hand-tuned half of the LostDevices rule base,
exactly as shipped; tests assert the shipped file still carries these lines
verbatim and derive completion/coverage expectations from them.
"""

EXPERT_RULES_TEXT = """\
11. If (Group_1 is medium) and (Group_2 is veryLow) then (LostDevices is low) (1)
12. If (Group_1 is medium) and (Group_2 is low) then (LostDevices is low) (1)
13. If (Group_1 is medium) and (Group_2 is medium) then (LostDevices is medium) (1)
14. If (Group_1 is medium) and (Group_2 is high) then (LostDevices is medium) (1)
15. If (Group_1 is medium) and (Group_2 is veryHigh) then (LostDevices is high) (1)
16. If (Group_1 is high) and (Group_2 is veryLow) then (LostDevices is low) (1)
17. If (Group_1 is high) and (Group_2 is low) then (LostDevices is medium) (1)
18. If (Group_1 is high) and (Group_2 is medium) then (LostDevices is medium) (1)
19. If (Group_1 is high) and (Group_2 is high) then (LostDevices is high) (1)
20. If (Group_1 is high) and (Group_2 is veryHigh) then (LostDevices is high) (1)
21. If (Group_1 is veryHigh) and (Group_2 is veryLow) then (LostDevices is medium) (1)
22. If (Group_1 is veryHigh) and (Group_2 is low) then (LostDevices is medium) (1)
23. If (Group_1 is veryHigh) and (Group_2 is medium) then (LostDevices is medium) (1)
24. If (Group_1 is veryHigh) and (Group_2 is high) then (LostDevices is high) (1)
25. If (Group_1 is veryHigh) and (Group_2 is veryHigh) then (LostDevices is veryHigh) (1)
"""

EXPERT_RULE_LINES = [line for line in EXPERT_RULES_TEXT.splitlines() if line.strip()]

# Centroid of tri(0, 2.5, 5) clipped at 0.5, over [0, 10]; pinned from
# tests/oracles.centroid_dense at 100001 points before the engine existed.
CLIPPED_LOW_TRIANGLE_CENTROID = 2.5000000000000213
