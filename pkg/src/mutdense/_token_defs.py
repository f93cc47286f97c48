"""Token kind codes and keyword table shared by both scanner kernels.

Kept free of package imports so the compiled kernel can load it cheaply.
"""

IDENTIFIER = 0
KEYWORD = 1
OPERATOR = 2
PUNCTUATION = 3
NUMBER = 4
STRING = 5
CHAR = 6

# Reserved words, including the literal words true/false/null.  Contextual
# keywords (var, record, yield, ...) stay identifiers.
KEYWORDS = frozenset(
    {
        "abstract", "assert", "boolean", "break", "byte", "case", "catch",
        "char", "class", "const", "continue", "default", "do", "double",
        "else", "enum", "extends", "final", "finally", "float", "for",
        "goto", "if", "implements", "import", "instanceof", "int",
        "interface", "long", "native", "new", "package", "private",
        "protected", "public", "return", "short", "static", "strictfp",
        "super", "switch", "synchronized", "this", "throw", "throws",
        "transient", "try", "void", "volatile", "while",
        "true", "false", "null",
    }
)
