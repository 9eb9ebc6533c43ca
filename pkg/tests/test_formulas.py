import pytest

from baokit import (
    And,
    Atom,
    Eq,
    Exists,
    Forall,
    FormulaSyntaxError,
    Iff,
    Implies,
    Not,
    Or,
    Vocabulary,
    format_formula,
    free_vars,
    max_var_index,
    parse_formula,
    quantifier_depth,
)


def test_parse_examples():
    assert parse_formula("E(v0,v1)") == Atom("E", (0, 1))
    tr_body = parse_formula("all v2 (E(v2,v0) <-> E(v2,v1))")
    assert tr_body == Forall(2, Iff(Atom("E", (2, 0)), Atom("E", (2, 1))))
    assert parse_formula("ex v0 R(v0,v1,v2)") == Exists(0, Atom("R", (0, 1, 2)))


def test_parse_connectives_and_precedence():
    f = parse_formula("E(v0,v1) & !v0 = v1 -> E(v1,v0) | E(v0,v0)")
    assert isinstance(f, Implies)
    assert isinstance(f.left, And)
    assert isinstance(f.right, Or)
    g = parse_formula("v0 != v1")
    assert g == Not(Eq(0, 1))


def test_roundtrip_through_printer():
    texts = [
        "E(v0,v1)",
        "v0 = v1",
        "v0 != v1",
        "all v2 (E(v2,v0) <-> E(v2,v1))",
        "ex v0 R(v0,v1,v2)",
        "(E(v0,v1) | v0 = v2) & !E(v1,v1)",
        "all v0 (ex v1 (E(v0,v1) -> E(v1,v0) -> v0 = v1))",
        "ex v1 !E(v0,v1)",
    ]
    for text in texts:
        f = parse_formula(text)
        assert parse_formula(format_formula(f)) == f


def test_syntax_errors_carry_positions():
    with pytest.raises(FormulaSyntaxError) as info:
        parse_formula("E(v0,v1) &")
    assert info.value.position == len("E(v0,v1) &")
    with pytest.raises(FormulaSyntaxError):
        parse_formula("E(v0 v1)")
    with pytest.raises(FormulaSyntaxError):
        parse_formula("all x E(v0,v1)")
    with pytest.raises(FormulaSyntaxError):
        parse_formula("E(v0,v1) extra")


def test_cached_attributes():
    f = parse_formula("all v2 (E(v2,v0) <-> E(v2,v1))")
    assert free_vars(f) == frozenset({0, 1})
    assert max_var_index(f) == 2
    assert quantifier_depth(f) == 1
    g = parse_formula("ex v0 (all v1 (E(v0,v1) & ex v2 E(v2,v2)))")
    assert quantifier_depth(g) == 3
    assert free_vars(g) == frozenset()


def test_vocabulary_checks():
    vocab = Vocabulary.of(E=2, R=3)
    assert "E" in vocab
    assert vocab.arity("R") == 3
    from baokit.formulas import check_vocabulary

    check_vocabulary(parse_formula("E(v0,v1)"), vocab)
    with pytest.raises(ValueError):
        check_vocabulary(parse_formula("E(v0,v1,v2)"), vocab)
    with pytest.raises(ValueError):
        check_vocabulary(parse_formula("Q(v0)"), vocab)
