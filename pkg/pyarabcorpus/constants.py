DROP = "DROP"
FLAG = "FLAG"

LEVELS = [DROP, FLAG]

# Canonical punctuation marks of the alphabet.
FINAL_STOP = "."
ARABIC_QUESTION_MARK = "\u061f"
ARABIC_COMMA = "\u060c"

KASHEEDA = "\u0640"

DEFAULT_ALPHABET_PRESET = "msa_pc"
DEFAULT_LETTER_NORM_PRESET = "none"

__all__ = [
    "DROP",
    "FLAG",
    "LEVELS",
    "FINAL_STOP",
    "ARABIC_QUESTION_MARK",
    "ARABIC_COMMA",
    "KASHEEDA",
    "DEFAULT_ALPHABET_PRESET",
    "DEFAULT_LETTER_NORM_PRESET",
]
