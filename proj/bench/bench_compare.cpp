// Benchmark comparing the serial reference implementations against the
// OpenMP kernels on identical workloads.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "vknot/parallel.hpp"

using namespace vknot;

namespace {

template <class F>
double time_ms(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

void row(const char* name, double serial_ms, double omp_ms) {
    std::printf("%-28s %10.1f ms %10.1f ms %8.2fx\n", name, serial_ms, omp_ms,
                omp_ms > 0 ? serial_ms / omp_ms : 0.0);
}

}  // namespace

int main(int argc, char** argv) {
    long long trials = 400;
    int moves = 40;
    int batch = 4000;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--trials" && i + 1 < argc) trials = std::atoll(argv[++i]);
        if (a == "--moves" && i + 1 < argc) moves = std::atoi(argv[++i]);
        if (a == "--batch" && i + 1 < argc) batch = std::atoi(argv[++i]);
    }

    std::printf("threads: %d\n", openmp_threads());
    std::printf("%-28s %13s %13s %9s\n", "workload", "serial", "openmp", "speedup");

    Rng rng(1);
    std::vector<SignedGaussDiagram> ks;
    std::vector<VirtualString> ss;
    for (int i = 0; i < batch; ++i) {
        ks.push_back(random_diagram(rng, rng.range(2, 9)));
        ss.push_back(random_string(rng, rng.range(2, 8)));
    }

    std::vector<Poly> p1, p2;
    double s = time_ms([&] { p1 = pt_batch(ks, false); });
    double p = time_ms([&] { p2 = pt_batch(ks, true); });
    if (p1 != p2) {
        std::printf("pt_batch mismatch between serial and openmp\n");
        return 1;
    }
    row("pt batch", s, p);

    std::vector<Fingerprint> f1, f2;
    s = time_ms([&] { f1 = flat_fingerprint_batch(ss, false); });
    p = time_ms([&] { f2 = flat_fingerprint_batch(ss, true); });
    if (f1 != f2) {
        std::printf("fingerprint batch mismatch between serial and openmp\n");
        return 1;
    }
    row("flat fingerprint batch", s, p);

    for (FuzzSuite suite : {FuzzSuite::pt, FuzzSuite::flat, FuzzSuite::singular}) {
        FuzzReport r1, r2;
        s = time_ms([&] { r1 = run_fuzz_suite(suite, trials, moves, 42, false); });
        p = time_ms([&] { r2 = run_fuzz_suite(suite, trials, moves, 42, true); });
        if (r1.applications != r2.applications || r1.failures.size() != r2.failures.size()) {
            std::printf("fuzz report mismatch between serial and openmp\n");
            return 1;
        }
        row(("fuzz suite " + suite_name(suite)).c_str(), s, p);
    }
    return 0;
}
