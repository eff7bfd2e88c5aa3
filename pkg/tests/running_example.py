"""The running gift example, built directly from constructors (no parser)."""

from slt.core import Call, Declarations, End, Rec, Var, choice, msg

END = End()

LC = msg("req", "store", "req3", "nat",
         choice("store", "req", ("yes3", "str", END), ("no3", "unit", END)))

LB = msg("req", "issuer", "req2", "str",
         choice("issuer", "req", ("yes2", "nat", Call("lc")), ("no2", "unit", END)))

LA = msg("req", "map", "req1", "str",
         choice("map", "req", ("yes1", "str", Call("lb")), ("no1", "unit", END)))

G = msg("req", "map", "req1", "str", choice(
    "map", "req",
    ("yes1", "str", msg("req", "issuer", "req2", "str", choice(
        "issuer", "req",
        ("yes2", "nat", LC),
        ("no2", "unit", msg("req", "store", "no4")),
    ))),
    ("no1", "unit", msg("req", "issuer", "no5", "unit", msg("req", "store", "no6"))),
))

# G after eliminating no4 (no6 goes too): the lc continuation becomes a call
LA_PRIME = msg("req", "map", "req1", "str", choice(
    "map", "req",
    ("yes1", "str", msg("req", "issuer", "req2", "str", choice(
        "issuer", "req",
        ("yes2", "nat", Call("lc")),
        ("no2", "unit", END),
    ))),
    ("no1", "unit", msg("req", "issuer", "no5")),
))

DECLS = Declarations([("lb", LB), ("lc", LC)])
LC_ONLY = Declarations([("lc", LC)])

MU_STOP = Rec("t", choice(
    "r1", "r2",
    ("goon", "nat", msg("r2", "r3", "goon", "nat", Var("t"))),
    ("stop", "unit", msg("r2", "r3", "stop")),
))

PATH_NO4 = ("req1", "yes1", "req2", "no2")
PATH_NO5 = ("req1", "no1")
PATH_NO6 = ("req1", "no1", "no5")
