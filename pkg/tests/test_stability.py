import pytest

from conjstab import (
    Certificate,
    NOT_STABLE,
    STABLE,
    brute_stability_witness,
    build_graph,
    candidate_reps,
    conjugacy_in_subgroup,
    conjugate_subgroup,
    decide_stability,
    dedup_double_cosets,
    in_double_coset,
    intersection,
    validate_certificate,
)
from conjstab.stability import (
    FAIL_EMPTY_COSET,
    FAIL_PRIMITIVE_GENERATOR,
    FAIL_RANK_GE_2,
    FAILURE_OUTCOMES,
    PASS,
    _report_for_reps,
)

from helpers import ball_words


def S(ab, *gens):
    return build_graph(tuple(ab.word(g) for g in gens), ab)


# ---------------------------------------------------------------------------
# candidate representatives
# ---------------------------------------------------------------------------


def test_candidates_malnormal_cyclic(ab):
    assert candidate_reps(S(ab, "a")) == []


def test_candidates_whole_group(ab):
    assert candidate_reps(S(ab, "a", "b")) == []


def test_candidates_two_cycle(ab):
    reps = candidate_reps(S(ab, "aa"))
    assert {str(r.g) for r in reps} == {"a", "A"}
    for rep in reps:
        assert rep.intersection_rank == 1
        assert rep.intersection.graph == S(ab, "aa").graph


def test_candidates_trivial_subgroup_raises(ab):
    with pytest.raises(ValueError):
        candidate_reps(build_graph((), ab))


def test_candidate_invariants(ab):
    for gens in (("aa",), ("aa", "baaB"), ("a", "baB"), ("ab", "ba")):
        H = S(ab, *gens)
        for rep in candidate_reps(H):
            assert not H.contains(rep.g)
            recomputed = intersection(conjugate_subgroup(H, rep.g), H)
            assert recomputed.graph == rep.intersection.graph
            assert rep.intersection_rank == rep.intersection.graph.rank >= 1


# ---------------------------------------------------------------------------
# decision procedure
# ---------------------------------------------------------------------------


def test_decide_trivial_stable(ab):
    report = decide_stability(build_graph((), ab))
    assert report.verdict == STABLE
    assert report.analyses == ()
    assert report.certificate is None


def test_decide_whole_group_stable(ab):
    assert decide_stability(S(ab, "a", "b")).verdict == STABLE


def test_decide_cyclic_square_stable(ab):
    report = decide_stability(S(ab, "aa"))
    assert report.verdict == STABLE
    assert len(report.analyses) == 2
    for analysis in report.analyses:
        assert analysis.outcome == PASS
        assert str(analysis.generator) == "aa"
        assert str(analysis.root) == "a"
        assert analysis.exponent == 2
        assert analysis.witness is not None


def test_decide_not_stable_empty_coset(ab):
    report = decide_stability(S(ab, "aa", "baaB"))
    assert report.verdict == NOT_STABLE
    c = report.certificate
    assert (str(c.u), str(c.v), str(c.g)) == ("aa", "baaB", "B")
    first_fail = next(a for a in report.analyses if a.outcome in FAILURE_OUTCOMES)
    assert first_fail.outcome == FAIL_EMPTY_COSET
    assert str(first_fail.rep.g) == "B"


def test_decide_not_stable_primitive_generator(ab):
    # conjugating <a, bab^-1> by b^-1 meets it in <a>, generated by a root
    # element, so no power coset can reach back into the subgroup
    report = decide_stability(S(ab, "a", "baB"))
    assert report.verdict == NOT_STABLE
    first_fail = next(a for a in report.analyses if a.outcome in FAILURE_OUTCOMES)
    assert first_fail.outcome == FAIL_PRIMITIVE_GENERATOR
    c = report.certificate
    assert (str(c.u), str(c.v), str(c.g)) == ("a", "baB", "B")
    assert brute_stability_witness(S(ab, "a", "baB"), 4).witness is not None


def test_decide_not_stable_rank_ge_2(ab):
    # index-2 subgroup: every conjugate intersection is the whole subgroup
    H = S(ab, "aa", "b", "abA")
    report = decide_stability(H)
    assert report.verdict == NOT_STABLE
    first_fail = next(a for a in report.analyses if a.outcome in FAILURE_OUTCOMES)
    assert first_fail.outcome == FAIL_RANK_GE_2
    c = report.certificate
    assert (str(c.u), str(c.v), str(c.g)) == ("b", "abA", "A")
    assert c.u.root().exponent == 1
    assert validate_certificate(H, c)
    assert brute_stability_witness(H, 4).witness is not None


def test_decide_verdict_iff_certificate(ab):
    for gens in ((), ("a",), ("aa",), ("ab",), ("aa", "baaB"), ("a", "baB"), ("a", "b")):
        report = decide_stability(S(ab, *gens))
        failed = any(a.outcome in FAILURE_OUTCOMES for a in report.analyses)
        assert (report.verdict == NOT_STABLE) == (report.certificate is not None) == failed


def test_decide_rank_one_alphabet():
    from conjstab import Alphabet

    z = Alphabet("a")
    for gens in ((), ("a",), ("aa",), ("aaa",)):
        H = build_graph(tuple(z.word(g) for g in gens), z)
        assert decide_stability(H).verdict == STABLE


def test_decide_dedup_gives_same_verdict(ab):
    for gens in (("aa", "baaB"), ("aa", "b", "abA"), ("aa",), ("a", "baB"), ("abab", "bb")):
        H = S(ab, *gens)
        plain = decide_stability(H, dedup_threshold=None)
        deduped = decide_stability(H, dedup_threshold=0)
        assert plain.verdict == deduped.verdict


# ---------------------------------------------------------------------------
# double cosets and representative equivalence
# ---------------------------------------------------------------------------


def test_in_double_coset(ab):
    H = S(ab, "aa")
    assert in_double_coset(H, ab.word("a"), ab.word("A"))
    assert in_double_coset(H, ab.word("a"), ab.word("aaa"))
    assert not in_double_coset(H, ab.word("a"), ab.word("b"))


def test_dedup_double_cosets(ab):
    H = S(ab, "aa")
    reps = candidate_reps(H)
    kept = dedup_double_cosets(H, reps)
    assert len(kept) == 1
    assert str(kept[0].g) == "a"  # shortlex-least representative wins


def test_verdict_invariant_under_coset_moves(ab):
    # replacing each representative g by h*g*f with h, f in H must not
    # change the verdict
    from conjstab.stability import CandidateRep

    for gens in (("aa",), ("aa", "baaB"), ("a", "baB"), ("aa", "b")):
        H = S(ab, *gens)
        reps = candidate_reps(H)
        h = H.basis()[0]
        f = H.basis()[-1].inverse()
        moved = []
        for rep in reps:
            g2 = h * rep.g * f
            K2 = intersection(conjugate_subgroup(H, g2), H)
            moved.append(CandidateRep(g2, rep.source_pair, K2, K2.graph.rank))
        assert _report_for_reps(H, moved).verdict == _report_for_reps(H, reps).verdict


def test_rep_completeness_small(ab):
    # every short g with a nontrivial conjugate intersection falls into an
    # emitted double coset
    for gens in (("aa",), ("aa", "baaB"), ("a", "baB"), ("aa", "b")):
        H = S(ab, *gens)
        reps = candidate_reps(H)
        for g in ball_words(ab, 3):
            if g.is_identity or H.contains(g):
                continue
            if intersection(conjugate_subgroup(H, g), H).graph.rank == 0:
                continue
            assert any(in_double_coset(H, rep.g, g) for rep in reps), (gens, g)


# ---------------------------------------------------------------------------
# conjugacy inside a subgroup
# ---------------------------------------------------------------------------


def test_conjugacy_in_whole_group(ab):
    H = S(ab, "a", "b")
    h = conjugacy_in_subgroup(H, ab.word("ab"), ab.word("ba"))
    assert h == ab.word("a")


def test_conjugacy_blocked(ab):
    H = S(ab, "aa", "baaB")
    assert conjugacy_in_subgroup(H, ab.word("aa"), ab.word("baaB")) is None


def test_conjugacy_identity_cases(ab):
    H = S(ab, "aa", "baaB")
    assert conjugacy_in_subgroup(H, ab.word("aa"), ab.word("aa")) == ab.identity()
    assert conjugacy_in_subgroup(H, ab.identity(), ab.identity()) == ab.identity()


def test_conjugacy_nontrivial_conjugator(ab):
    H = S(ab, "a", "bb")
    u, v = ab.word("bbaBB"), ab.word("a")
    h = conjugacy_in_subgroup(H, u, v)
    assert h is not None
    assert H.contains(h)
    assert u.conjugated_by(h) == v


def test_conjugacy_membership_precondition(ab):
    H = S(ab, "aa")
    with pytest.raises(ValueError):
        conjugacy_in_subgroup(H, ab.word("a"), ab.word("aa"))
    with pytest.raises(ValueError):
        conjugacy_in_subgroup(H, ab.word("aa"), ab.word("b"))


def test_conjugacy_agrees_with_free_conjugacy_oracle(ab):
    # inside the whole group, conjugacy in the subgroup is free conjugacy
    from conjstab import conjugate_in_free

    H = S(ab, "a", "b")
    for u in ball_words(ab, 3):
        for v in ball_words(ab, 3):
            h = conjugacy_in_subgroup(H, u, v)
            assert (h is not None) == (conjugate_in_free(u, v) is not None)
            if h is not None:
                assert u.conjugated_by(h) == v


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------


def test_validate_certificate_good(ab):
    H = S(ab, "aa", "baaB")
    assert validate_certificate(H, decide_stability(H).certificate)


def test_validate_certificate_rejections(ab):
    H = S(ab, "aa")
    word = ab.word
    # conjugation by a is realized inside H (by the identity)
    assert not validate_certificate(H, Certificate(word("aa"), word("aa"), word("a")))
    # u outside H
    assert not validate_certificate(H, Certificate(word("a"), word("a"), word("b")))
    # v outside H
    assert not validate_certificate(H, Certificate(word("aa"), word("baaB"), word("B")))
    # g inside H
    assert not validate_certificate(H, Certificate(word("aa"), word("aa"), word("aaaa")))
    # wrong conjugation equation
    assert not validate_certificate(S(ab, "aa", "baaB"), Certificate(word("aa"), word("baaB"), word("b")))
    # trivial u
    assert not validate_certificate(H, Certificate(word(""), word(""), word("b")))


def test_certificates_always_validate(ab):
    cases = [
        ("aa", "baaB"),
        ("a", "baB"),
        ("aa", "b", "abA"),
        ("abab", "bb"),
        ("ab", "aabb"),
        ("aab", "baa"),
    ]
    for gens in cases:
        H = S(ab, *gens)
        report = decide_stability(H)
        if report.certificate is not None:
            assert validate_certificate(H, report.certificate), gens
