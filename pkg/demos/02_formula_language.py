"""
A tour of the formula language
==============================

Formulas are plain text: atoms name output classes, `~ & |` are the usual
connectives, `K{A}` is "agent A knows", `<K{A}>` is "A considers
possible", `D{A,B}` is what A and B would know by pooling their
information, `E{A,B}` is "everybody knows", and `[psi] phi` reads "after
publicly announcing psi, phi holds".
"""
from masks import Atom, KripkeModel, satisfies
from masks.syntax import format_formula, parse

# --- parsing and printing ---------------------------------------------------
for text in [
    "c0",
    "2:c7",                      # class c7 of component 2 in a joint model
    "~(c0 & c6)",
    "K{A0} (c0 | c6 | c8 | c9)",
    "<K{A0}> c8",
    "D{A0,A1} c0",
    "E{A0,A1} (c0 | c6)",
    "[c0 | c6] K{A0} (c0 | c6)",
]:
    ast = parse(text)
    print(f"{text:35} ->  {ast!r:.60}")
    assert parse(format_formula(ast)) == ast  # printer round-trips

# --- precedence -------------------------------------------------------------
# prefix operators bind tighter than &, and & tighter than |
print()
print("K{A} a & b    parses as:", format_formula(parse("K{A} a & b")))
print("a & b | c     parses as:", format_formula(parse("a & b | c")))

# --- evaluating formulas over a model ---------------------------------------
# One agent that cannot tell four digit-worlds apart, and one that can
# separate w9 from the rest.
model = KripkeModel.build(
    ["w0", "w6", "w8", "w9"],
    {"A0": [["w0", "w6", "w8", "w9"]],
     "A1": [["w0", "w6", "w8"], ["w9"]]},
    {w: [Atom("c" + w[1:])] for w in ("w0", "w6", "w8", "w9")})

queries = [
    ("w0", "K{A0} (c0 | c6 | c8 | c9)"),   # A0 knows its candidate range
    ("w0", "K{A0} c0"),                    # ... but not the exact digit
    ("w9", "K{A1} c9"),                    # A1 does know, at w9
    ("w0", "D{A0,A1} (c0 | c6 | c8)"),     # pooled knowledge is sharper
    ("w0", "[c0 | c6] K{A0} (c0 | c6)"),   # announcements teach agents
    ("w0", "<K{A0}> c8"),
]
print()
for world, text in queries:
    value = satisfies(model, world, parse(text))
    print(f"at {world}: {text:32} is {value}")

# --- malformed input carries a source span ----------------------------------
from masks.errors import ParseError

try:
    parse("c0 & & c6")
except ParseError as err:
    text = "c0 & & c6"
    print()
    print("parse error:", err)
    print("  offending region:", repr(text[err.start:err.end]))
