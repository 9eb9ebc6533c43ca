from baokit import (
    free_vars,
    hf_universe,
    max_var_index,
    quantifier_depth,
    satisfaction_set,
)
from baokit.hf import ordinal_hf, robinson_model
from baokit.library import (
    MEMBER_VOCAB,
    ORDER_VOCAB,
    formula_library,
    load_corpus,
    robinson_axioms,
)
from baokit.formulas import check_vocabulary


def test_library_names_present():
    lib = formula_library()
    for name in (
        "suc",
        "suc_literal",
        "ax",
        "ax_literal",
        "phi",
        "psi",
        "eta",
        "ax_eq",
        "ax_cong",
        "pair",
        "p0",
        "p1",
        "pi",
        "ord",
        "ford",
        "set_zero",
        "set_suc",
        "subset_leq",
        "set_less",
        "lambda",
    ):
        assert name in lib
        assert lib[name].description


def test_library_vocabularies_check_out():
    lib = formula_library()
    for entry in lib.values():
        check_vocabulary(entry.formula, entry.vocabulary)


def test_suc_free_variables():
    lib = formula_library()
    assert free_vars(lib["suc"].formula) == frozenset({0, 1})
    assert free_vars(lib["phi"].formula) == frozenset({0, 1, 2})
    assert free_vars(lib["eta"].formula) == frozenset()


def test_order_family_uses_three_variables():
    lib = formula_library()
    for name in ("suc", "ax", "phi", "psi", "eta"):
        assert max_var_index(lib[name].formula) <= 2


def test_ax_quantifier_depth_fits_default_window():
    lib = formula_library()
    assert quantifier_depth(lib["ax"].formula) * 2 < 16
    assert quantifier_depth(lib["eta"].formula) * 2 < 16


def test_extensionality_axioms_hold_on_hf_models():
    lib = formula_library()
    for rank in (1, 2, 3):
        m = hf_universe(rank).model()
        assert satisfaction_set(m, lib["ax_eq"].formula, 3).is_full()
        assert satisfaction_set(m, lib["ax_cong"].formula, 3).is_full()


def test_set_zero_and_suc_match_structure():
    m = hf_universe(3).model()
    lib = formula_library()
    zero_sat = satisfaction_set(m, lib["set_zero"].formula, 3)
    assert [s[0] for s in zero_sat.tuples() if s[1] == 0 and s[2] == 0] == [0]
    suc_sat = satisfaction_set(m, lib["set_suc"].formula, 3)
    pairs = {(s[0], s[1]) for s in suc_sat.tuples() if s[2] == 0}
    # 0 -> 1 and 1 -> 2 are the successor steps visible at rank 3
    assert (ordinal_hf(0).code, ordinal_hf(1).code) in pairs
    assert (ordinal_hf(1).code, ordinal_hf(2).code) in pairs
    for a, b in pairs:
        assert b == a | (1 << a)


def test_subset_formulas_match_code_tests():
    m = hf_universe(2).model()
    lib = formula_library()
    leq_sat = satisfaction_set(m, lib["subset_leq"].formula, 3)
    for s in leq_sat.space.tuples():
        got = bool((leq_sat.bits >> leq_sat.space.encode(s)) & 1)
        assert got == (s[0] & ~s[1] == 0)


def test_robinson_axioms_hold_on_truncated_carrier():
    model = robinson_model(5)
    for name, axiom in robinson_axioms().items():
        n = max_var_index(axiom) + 1
        assert satisfaction_set(model, axiom, n).is_full(), name


def test_lambda_conjunction_holds():
    lib = formula_library()
    model = robinson_model(5)
    f = lib["lambda"].formula
    assert satisfaction_set(model, f, max_var_index(f) + 1).is_full()


def test_lambda_checkable_instances():
    # x < sy <-> x <= y on small ordinals, via the model tables
    model = robinson_model(5)
    for x in range(3):
        for y in range(3):
            less_sx = model.rel_holds("less", (x, y + 1))
            leq = model.rel_holds("leq", (x, y))
            assert less_sx == leq
    for x in range(5):
        assert not model.rel_holds("zero", (x + 1,))


def test_corpus_parses_and_names_unique():
    corpus = load_corpus()
    names = [name for name, _ in corpus]
    assert len(names) == len(set(names))
    assert len(corpus) >= 10
    for _, f in corpus:
        check_vocabulary(f, MEMBER_VOCAB)
        assert max_var_index(f) <= 2


def test_pair_formula_agreement_is_exercised_elsewhere():
    # pair/p0/p1 versus the decoder is covered in the hf tests; here just
    # pin the vocabulary and the shape
    lib = formula_library()
    assert lib["pair"].vocabulary == MEMBER_VOCAB
    assert free_vars(lib["pair"].formula) == frozenset({0})
    assert free_vars(lib["p0"].formula) == frozenset({0, 1})
    assert free_vars(lib["p1"].formula) == frozenset({0, 1})
    assert lib["ax"].vocabulary == ORDER_VOCAB
