OUT_OF_ALPHABET = "out-of-alphabet symbol U+{codepoint:04X} at offset {offset}"
DIGIT_AFTER_CONVERSION = "digit U+{codepoint:04X} at offset {offset} left after conversion"
EMPTY_TEXT = "text is empty"
DURATION_OUT_OF_RANGE = "duration {value:g}s outside [{low:g}, {high:g}]"
ZERO_DURATION = "duration is zero"
WORD_RATE_OUT_OF_RANGE = "word rate {value:.3f}/s outside [{low:g}, {high:g}]"
CHAR_RATE_OUT_OF_RANGE = "char rate {value:.3f}/s outside [{low:g}, {high:g}]"
HYP_WER_TOO_HIGH = "hypothesis WER {value:.2f} > {limit:g}"
HYP_CER_TOO_HIGH = "hypothesis CER {value:.2f} > {limit:g}"
HYP_MISSING = "no pred_text, hypothesis filter skipped"
OVERLAP = "transcript also present in reference split"
ID_NOT_LISTED = "recording id not in the id list"
ID_LISTED = "recording id in the id list"
