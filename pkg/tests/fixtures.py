"""Synthetic 27-student interaction log shaped like a small-group course.

The log has two phases so the same file supports both graph constructions:
``w1`` rows give each student an interaction-partner profile (nine students
built with exactly one partner, so their diversity is zero), ``w2`` rows
carry a planted two-block structure in the (code, partner) space for the
clustering path. Fourteen behaviour codes appear overall; partners are the
other students plus the "AI" assistant.
"""

from __future__ import annotations

CODES = (
    "Question",
    "Answer",
    "NewIdea",
    "CriticalAssessment",
    "Integration",
    "Planning",
    "Monitoring",
    "Evaluation",
    "Encouragement",
    "Appreciation",
    "Agreement",
    "TaskClarification",
    "TaskAssignment",
    "ResourceCoordination",
)

STUDENTS = tuple(f"s{i:02d}" for i in range(1, 28))

# groups of sizes 5,5,5,4,4,4 (six project teams)
GROUP_SIZES = (5, 5, 5, 4, 4, 4)

AI_ONLY = STUDENTS[0:5]        # s01..s05: diversity 0 via a single AI partner
SINGLE_PEER = STUDENTS[13:17]  # s14..s17: diversity 0 via a single peer partner
BLOCK_A = STUDENTS[0:13]       # planted cluster 1 in phase w2
BLOCK_B = STUDENTS[13:27]      # planted cluster 2 in phase w2


def group_of(student: str) -> str:
    idx = STUDENTS.index(student)
    edge = 0
    for g, size in enumerate(GROUP_SIZES, start=1):
        edge += size
        if idx < edge:
            return f"g{g}"
    raise ValueError(student)


def case_study_rows() -> list[tuple[str, str, str, str, str]]:
    """(student, partner, code, group, phase) rows, deterministically ordered."""
    rows: list[tuple[str, str, str, str, str]] = []

    def add(student, partner, code, phase, times):
        rows.extend((student, partner, code, group_of(student), phase) for _ in range(times))

    # phase w1: interaction-partner profiles
    for s in AI_ONLY:
        add(s, "AI", "Question", "w1", 6)
        add(s, "AI", "TaskAssignment", "w1", 3)
    for s in SINGLE_PEER:
        add(s, "s01", "Planning", "w1", 5)
        add(s, "s01", "Agreement", "w1", 4)
    for s in STUDENTS[5:13]:  # s06..s13
        add(s, "AI", "Question", "w1", 6)
        add(s, "AI", "TaskAssignment", "w1", 3)
        add(s, "s01", "Agreement", "w1", 2)
    spare_codes = ("NewIdea", "CriticalAssessment", "Integration", "Evaluation",
                   "Appreciation", "TaskClarification", "ResourceCoordination", "Monitoring")
    for k, s in enumerate(STUDENTS[17:25]):  # s18..s25
        add(s, "s01", "Planning", "w1", 5)
        add(s, "s02", "Encouragement", "w1", 3)
        add(s, "AI", "Question", "w1", 1)
        add(s, "s02", spare_codes[k], "w1", 1)
    for s in STUDENTS[25:27]:  # s26, s27
        add(s, "s03", "Answer", "w1", 2)
        add(s, "AI", "Question", "w1", 2)
        add(s, "s04", "Monitoring", "w1", 1)
    # one deliberate self-interaction row; dropped (and counted) at build time
    rows.append(("s05", "s05", "Agreement", group_of("s05"), "w1"))

    # phase w2: planted two-block structure over (code, partner) targets
    for s in BLOCK_A:
        add(s, "AI", "Question", "w2", 5)
        add(s, "AI", "TaskAssignment", "w2", 3)
    for s in BLOCK_B:
        add(s, "s01", "Planning", "w2", 5)
        add(s, "s02", "Agreement", "w2", 3)

    return rows


def case_study_csv() -> str:
    lines = ["student,partner,code,group,phase"]
    lines.extend(",".join(row) for row in case_study_rows())
    return "\n".join(lines) + "\n"


PLANTED_LABELS = tuple(0 if s in BLOCK_A else 1 for s in STUDENTS)
