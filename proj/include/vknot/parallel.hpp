#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vknot/diagram.hpp"
#include "vknot/invariants.hpp"
#include "vknot/rng.hpp"

namespace vknot {

// --- random inputs shared by the fuzz suites, tests and benchmarks ---

SignedGaussDiagram random_diagram(Rng& rng, int chords, int singular = 0);
VirtualString random_string(Rng& rng, int arrows);
SingularVirtualString random_singular_string(Rng& rng, int arrows);
// random skew-symmetric SBM with entries in [-2, 2]
SBM random_sbm(Rng& rng, int elements);

// One walk step used by the invariance suites: enumerates the given kinds,
// excluding insertions once the diagram reaches `cap` chords, and applies a
// uniformly chosen instance. Returns false when nothing applies.
bool walk_step(SignedGaussDiagram& d, Rng& rng, const KindSet& kinds, int cap);
bool walk_step(VirtualString& s, Rng& rng, const KindSet& kinds, int cap);
bool walk_step(SingularVirtualString& s, Rng& rng, const KindSet& kinds, int cap);
bool walk_step(FlatLink& l, Rng& rng, const KindSet& kinds, int cap);

// --- invariance / degree-one fuzz suites ---
//
// Each trial derives its own seed from the master seed, so trials are
// independent and the report is the same whether they run serially or
// under OpenMP.

enum class FuzzSuite { pt, mod2, flat, singular, degree1 };

FuzzSuite parse_suite(const std::string& name);
std::string suite_name(FuzzSuite s);

struct FuzzFailure {
    long long trial = 0;
    std::uint64_t seed = 0;
    std::string detail;
    std::string replay;  // replayable input line(s) for the failing trial
};

struct FuzzReport {
    FuzzSuite suite = FuzzSuite::pt;
    long long trials = 0;
    long long applications = 0;  // move applications (degree1: diagrams checked)
    std::vector<FuzzFailure> failures;
    bool ok() const { return failures.empty(); }
};

FuzzReport run_fuzz_suite(FuzzSuite suite, long long trials, int moves, std::uint64_t master_seed,
                          bool parallel);

// --- simple batch kernels (serial reference vs OpenMP) ---

std::vector<Poly> pt_batch(const std::vector<SignedGaussDiagram>& ks, bool parallel);
std::vector<Fingerprint> flat_fingerprint_batch(const std::vector<VirtualString>& ss, bool parallel);

int openmp_threads();  // 1 when built without OpenMP

}  // namespace vknot
