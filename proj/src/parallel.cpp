#include "vknot/parallel.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vknot {

SignedGaussDiagram random_diagram(Rng& rng, int chords, int singular) {
    SignedGaussDiagram d;
    std::vector<SignedGaussDiagram::Token> toks;
    for (int c = 1; c <= chords; ++c) {
        toks.push_back({c, Pass::over});
        toks.push_back({c, Pass::under});
    }
    for (int i = static_cast<int>(toks.size()) - 1; i > 0; --i)
        std::swap(toks[i], toks[rng.below(i + 1)]);
    d.word = toks;
    for (int c = 1; c <= chords; ++c) d.sign[c] = rng.below(2) ? 1 : -1;
    for (int c = 1; c <= singular && c <= chords; ++c) {
        bool flip = rng.below(2);
        for (auto& t : d.word) {
            if (t.id != c) continue;
            bool over = t.pass == Pass::over;
            t.pass = (over != flip) ? Pass::sing_tail : Pass::sing_head;
        }
        d.sign.erase(c);
        d.singular.insert(c);
    }
    return d;
}

VirtualString random_string(Rng& rng, int arrows) {
    VirtualString s;
    for (int a = 1; a <= arrows; ++a) {
        s.word.push_back({a, Role::tail});
        s.word.push_back({a, Role::head});
    }
    for (int i = static_cast<int>(s.word.size()) - 1; i > 0; --i)
        std::swap(s.word[i], s.word[rng.below(i + 1)]);
    return s;
}

SingularVirtualString random_singular_string(Rng& rng, int arrows) {
    if (arrows < 1) throw Error("singular string needs at least one arrow");
    VirtualString s = random_string(rng, arrows);
    return {s, rng.range(1, arrows)};
}

SBM random_sbm(Rng& rng, int elements) {
    if (elements < 2) throw Error("SBM needs at least s and d");
    SBM m;
    m.b.assign(elements, std::vector<int>(elements, 0));
    for (int i = 0; i < elements; ++i)
        for (int j = i + 1; j < elements; ++j) {
            int v = rng.range(-2, 2);
            m.b[i][j] = v;
            m.b[j][i] = -v;
        }
    return m;
}

namespace {

const KindSet insert_kinds = {MoveKind::r1_insert, MoveKind::r2_insert, MoveKind::si_insert,
                              MoveKind::sii_insert};

template <class D>
bool step_impl(D& d, Rng& rng, const KindSet& kinds, int cap, int rank) {
    KindSet use;
    for (MoveKind k : kinds)
        if (rank < cap || !insert_kinds.count(k)) use.insert(k);
    auto insts = enumerate_moves(d, use);
    if (insts.empty()) return false;
    d = apply_move(d, rng.pick(insts));
    return true;
}

}  // namespace

bool walk_step(SignedGaussDiagram& d, Rng& rng, const KindSet& kinds, int cap) {
    return step_impl(d, rng, kinds, cap, d.rank());
}
bool walk_step(VirtualString& s, Rng& rng, const KindSet& kinds, int cap) {
    return step_impl(s, rng, kinds, cap, s.rank());
}
bool walk_step(SingularVirtualString& s, Rng& rng, const KindSet& kinds, int cap) {
    return step_impl(s, rng, kinds, cap, s.base.rank());
}
bool walk_step(FlatLink& l, Rng& rng, const KindSet& kinds, int cap) {
    return step_impl(l, rng, kinds, cap, static_cast<int>(l.arrows().size()));
}

FuzzSuite parse_suite(const std::string& name) {
    if (name == "pt") return FuzzSuite::pt;
    if (name == "mod2") return FuzzSuite::mod2;
    if (name == "flat") return FuzzSuite::flat;
    if (name == "singular") return FuzzSuite::singular;
    if (name == "degree1") return FuzzSuite::degree1;
    throw Error("unknown fuzz suite '" + name + "'");
}

std::string suite_name(FuzzSuite s) {
    switch (s) {
        case FuzzSuite::pt: return "pt";
        case FuzzSuite::mod2: return "mod2";
        case FuzzSuite::flat: return "flat";
        case FuzzSuite::singular: return "singular";
        case FuzzSuite::degree1: return "degree1";
    }
    return "?";
}

namespace {

struct TrialResult {
    long long applications = 0;
    std::vector<FuzzFailure> failures;
};

void fail(TrialResult& r, long long trial, std::uint64_t seed, std::string detail,
          std::string replay) {
    r.failures.push_back({trial, seed, std::move(detail), std::move(replay)});
}

TrialResult run_invariance_trial(FuzzSuite suite, long long trial, std::uint64_t seed, int moves) {
    TrialResult res;
    Rng rng(seed);

    if (suite == FuzzSuite::pt || suite == FuzzSuite::mod2) {
        const KindSet& kinds = suite == FuzzSuite::pt ? knot_moves : knot_moves_cc;
        SignedGaussDiagram d = random_diagram(rng, rng.range(0, 5));
        std::string start = serialize_knot(d);
        Poly base = suite == FuzzSuite::pt ? pt(d) : pt_mod2(d);
        for (int s = 0; s < moves; ++s) {
            if (!walk_step(d, rng, kinds, 9)) continue;
            ++res.applications;
            Poly now = suite == FuzzSuite::pt ? pt(d) : pt_mod2(d);
            if (now != base) {
                fail(res, trial, seed,
                     "value changed at step " + std::to_string(s) + ": " + render_poly(base) +
                         " -> " + render_poly(now),
                     start + "\n" + serialize_knot(d) + "\n");
                return res;
            }
        }
        return res;
    }
    if (suite == FuzzSuite::flat) {
        VirtualString v = random_string(rng, rng.range(0, 4));
        std::string start = serialize_string(v);
        Fingerprint base = fingerprint_flat(v);
        for (int s = 0; s < moves; ++s) {
            if (!walk_step(v, rng, string_moves, 8)) continue;
            ++res.applications;
            if (s % 4 == 3 || s == moves - 1) {
                if (fingerprint_flat(v) != base) {
                    fail(res, trial, seed, "flat fingerprint changed at step " + std::to_string(s),
                         start + "\n" + serialize_string(v) + "\n");
                    return res;
                }
            }
        }
        if (fingerprint_flat(v) != base)
            fail(res, trial, seed, "flat fingerprint changed at walk end",
                 start + "\n" + serialize_string(v) + "\n");
        return res;
    }
    if (suite == FuzzSuite::singular) {
        SingularVirtualString v = random_singular_string(rng, rng.range(1, 4));
        std::string start = serialize_string(v);
        Fingerprint base = fingerprint_singular(v);
        for (int s = 0; s < moves; ++s) {
            if (!walk_step(v, rng, singular_moves, 8)) continue;
            ++res.applications;
            if (s % 4 == 3 || s == moves - 1) {
                if (fingerprint_singular(v) != base) {
                    fail(res, trial, seed,
                         "singular fingerprint changed at step " + std::to_string(s),
                         start + "\n" + serialize_string(v) + "\n");
                    return res;
                }
            }
        }
        if (fingerprint_singular(v) != base)
            fail(res, trial, seed, "singular fingerprint changed at walk end",
                 start + "\n" + serialize_string(v) + "\n");
        return res;
    }
    // degree1: the 4-term alternating sum of each invariant on a random
    // 2-singular diagram must vanish
    SignedGaussDiagram d = random_diagram(rng, rng.range(3, 6), 2);
    std::string line = serialize_knot(d);
    ++res.applications;
    if (!degree_one_check([](const SignedGaussDiagram& k) { return pt(k); }, d))
        fail(res, trial, seed, "pt derivative is nonzero on a 2-singular diagram", line + "\n");
    else if (!degree_one_check([](const SignedGaussDiagram& k) { return invariant_S(k); }, d))
        fail(res, trial, seed, "S derivative is nonzero on a 2-singular diagram", line + "\n");
    else if (!degree_one_check([](const SignedGaussDiagram& k) { return invariant_G(k); }, d))
        fail(res, trial, seed, "G derivative is nonzero on a 2-singular diagram", line + "\n");
    return res;
}

}  // namespace

FuzzReport run_fuzz_suite(FuzzSuite suite, long long trials, int moves, std::uint64_t master_seed,
                          bool parallel) {
    FuzzReport report;
    report.suite = suite;
    report.trials = trials;
    std::vector<TrialResult> results(static_cast<std::size_t>(std::max<long long>(trials, 0)));

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (long long t = 0; t < trials; ++t) {
        std::uint64_t seed = derive_seed(master_seed, static_cast<std::uint64_t>(t));
        results[t] = run_invariance_trial(suite, t, seed, moves);
    }
    (void)parallel;

    for (auto& r : results) {
        report.applications += r.applications;
        for (auto& f : r.failures) report.failures.push_back(std::move(f));
    }
    return report;
}

std::vector<Poly> pt_batch(const std::vector<SignedGaussDiagram>& ks, bool parallel) {
    std::vector<Poly> out(ks.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (long long i = 0; i < (long long)ks.size(); ++i) out[i] = pt(ks[i]);
    (void)parallel;
    return out;
}

std::vector<Fingerprint> flat_fingerprint_batch(const std::vector<VirtualString>& ss,
                                                bool parallel) {
    std::vector<Fingerprint> out(ss.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (long long i = 0; i < (long long)ss.size(); ++i) out[i] = fingerprint_flat(ss[i]);
    (void)parallel;
    return out;
}

int openmp_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace vknot
