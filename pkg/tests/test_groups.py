
import numpy as np
import pytest
import sympy

from symquot.corpus import CORPUS, corpus
from symquot.groups import GroupError, build, read_table, write_table

SMALL = [s for s in CORPUS if build(s).n <= 32]


def brute_classes(G):
    seen, out = set(), []
    for g in range(G.n):
        if g in seen:
            continue
        cls = {int(G.table[G.table[x, g], G.inv[x]]) for x in range(G.n)}
        seen |= cls
        out.append(tuple(sorted(cls)))
    return sorted(out)


def brute_order(G, g):
    k, x = 1, g
    while x != 0:
        x = int(G.table[x, g])
        k += 1
    return k


def element(G, label):
    return G.labels.index(label)


def conj(G, t, s):
    return int(G.table[G.table[t, s], G.inv[t]])


# -- construction and relations ---------------------------------------------

@pytest.mark.parametrize("spec,order,nclasses", [
    ("wreath:3", 81, 17), ("cyclic:5", 5, 5), ("dihedral:16", 16, 7), ("quaternion:16", 16, 7),
    ("semidihedral:16", 16, 10), ("quasidihedral:16", 16, 7), ("modular:16", 16, 10),
    ("extraspecial:3:+", 27, 11), ("extraspecial:27:-", 27, 11), ("file:s3", 6, 3), ("file:klein4.tab", 4, 4),
    ("product:cyclic:2*cyclic:3", 6, 6),
])
def test_orders_and_class_counts(spec, order, nclasses):
    G = build(spec)
    assert G.n == order
    assert len(G.classes) == nclasses == len(brute_classes(G))


@pytest.mark.parametrize("kind,r_of", [
    ("dihedral", lambda M: M - 1),
    ("quaternion", lambda M: M - 1),
    ("semidihedral", lambda M: 1 + M // 2),
    ("quasidihedral", lambda M: M // 2 - 1),
])
@pytest.mark.parametrize("n", [16, 32, 64])
def test_two_group_relations(kind, r_of, n):
    G = build(f"{kind}:{n}")
    M = n // 2
    s, t = element(G, (1, 0)), element(G, (0, 1))
    assert brute_order(G, s) == M
    assert conj(G, t, s) == G.power(s, r_of(M))
    t2 = int(G.table[t, t])
    if kind == "quaternion":
        assert t2 == G.power(s, M // 2)
    else:
        assert t2 == 0
    assert len(G.closure([s, t])) == n


@pytest.mark.parametrize("n,p,k", [(16, 2, 4), (32, 2, 5), (27, 3, 3), (81, 3, 4), (125, 5, 3)])
def test_modular_relations(n, p, k):
    G = build(f"modular:{n}")
    s, t = element(G, (1, 0)), element(G, (0, 1))
    assert brute_order(G, s) == p ** (k - 1) and brute_order(G, t) == p
    assert conj(G, t, s) == G.power(s, 1 + p ** (k - 2))


def test_extraspecial_and_wreath_structure():
    for spec in ("extraspecial:3:+", "extraspecial:3:-", "extraspecial:2:+", "extraspecial:2:-"):
        G = build(spec)
        assert not G.is_abelian() and len(G.center) == sympy.primefactors(G.n)[0]
    assert max(build("extraspecial:3:+").element_orders) == 3
    assert max(build("extraspecial:3:-").element_orders) == 9
    W = build("wreath:3")
    assert len(W.center) == 3 and W.exponent == 9


@pytest.mark.parametrize("bad", ["dihedral:7", "quaternion:12", "semidihedral:8", "modular:8", "modular:12",
                                 "wreath:4", "extraspecial:4:+", "extraspecial:3:x", "nope:3", "cyclic",
                                 "product:cyclic:2", "cyclic:x", "file:/nonexistent/table"])
def test_bad_descriptors(bad):
    with pytest.raises(GroupError):
        build(bad)


# -- invariants over the corpus ---------------------------------------------

@pytest.mark.parametrize("spec", SMALL)
def test_class_invariants(spec):
    G = build(spec)
    assert G.classes == brute_classes(G)
    assert sum(G.class_sizes) == G.n
    assert all(G.n % s == 0 for s in G.class_sizes)
    assert G.classes[0] == (0,)
    assert sorted(G.center) == sorted(c[0] for c in G.classes if len(c) == 1)
    assert G.element_orders == [brute_order(G, g) for g in range(G.n)]
    assert G.check_associative()


@pytest.mark.parametrize("spec", SMALL)
def test_p_local_predicates(spec):
    G = build(spec)
    for p in sympy.primefactors(G.n):
        # p-regular classes: representative order prime to p
        assert G.p_regular_classes(p) == [i for i, c in enumerate(G.classes) if G.element_orders[c[0]] % p]
        # p-nilpotent iff the p'-elements generate a subgroup of p'-order (normal p-complement)
        pprime = [g for g in range(G.n) if G.element_orders[g] % p]
        H = G.closure(pprime)
        pa = p ** sympy.multiplicity(p, G.n)
        assert G.is_p_nilpotent(p) == (len(H) == G.n // pa)
        # cyclic Sylow iff some subgroup of order p^a is cyclic
        sylows = G.subgroups_of_order(pa)
        assert G.sylow_is_cyclic(p) == any(max(G.element_orders[g] for g in P) == pa for P in sylows)


def test_p_regular_examples():
    G = build("file:s3")
    cls = G.p_regular_classes(3)
    assert [len(G.classes[i]) for i in cls] == [1, 3]
    C6 = build("cyclic:6")
    assert sorted(g for i in C6.p_regular_classes(2) for g in C6.classes[i]) == sorted(
        g for g in range(6) if C6.element_orders[g] in (1, 3))
    assert build("dihedral:16").p_regular_classes(2) == [0]


def test_predicate_examples():
    assert build("cyclic:12").is_p_nilpotent(2) and build("cyclic:12").is_p_nilpotent(3)
    assert not build("file:s3").is_p_nilpotent(3)
    assert build("file:s3").is_p_nilpotent(2)
    assert build("quaternion:16").is_p_nilpotent(2)
    assert build("cyclic:12").sylow_is_cyclic(3)
    assert not build("file:klein4").sylow_is_cyclic(2)
    assert not build("quaternion:16").sylow_is_cyclic(2)


# -- table files ------------------------------------------------------------

def test_table_roundtrip(tmp_path):
    G = build("dihedral:12")
    path = tmp_path / "d12.tab"
    write_table(G, path)
    H = read_table(path)
    assert np.array_equal(G.table, H.table)
    assert build(f"file:{path}").n == 12


def test_bundled_fixtures_match_families():
    S3 = build("file:s3")
    D6 = build("dihedral:6")
    # isomorphic: same class sizes and element order statistics
    assert sorted(S3.class_sizes) == sorted(D6.class_sizes)
    assert sorted(S3.element_orders) == sorted(D6.element_orders)
    V = build("file:klein4")
    assert V.is_abelian() and V.exponent == 2


@pytest.mark.parametrize("body,msg", [
    ("2\n1 2\n2 2\n", "Latin"),
    ("2\n2 1\n1 2\n", "identity"),
    ("2\n1 2\n2\n", "expected"),
    ("x\n", "non-integer"),
])
def test_bad_tables(tmp_path, body, msg):
    path = tmp_path / "bad.tab"
    path.write_text(body)
    with pytest.raises(GroupError, match=msg):
        read_table(path)


def test_non_associative_table(tmp_path):
    # a Latin square with identity that is not a group (order 5 loop)
    rows = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    path = tmp_path / "loop.tab"
    path.write_text("5\n" + "\n".join(" ".join(str(x + 1) for x in r) for r in rows) + "\n")
    with pytest.raises(GroupError):
        read_table(path)


def test_corpus_selector():
    assert corpus("wreath:*") == ["wreath:2", "wreath:3"]
    assert corpus("nothing*") == []
    assert all(build(s).n <= 64 or s == "wreath:3" for s in CORPUS)
