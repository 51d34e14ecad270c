// vknot: invariants of virtual knots from Gauss codes (p_t, S, G), based
// matrices of virtual strings, singular based matrices, move fuzzing and a
// worked-example demo.

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "vknot/based_matrix.hpp"
#include "vknot/diagram.hpp"
#include "vknot/invariants.hpp"
#include "vknot/moves.hpp"
#include "vknot/parallel.hpp"

using nlohmann::json;
using namespace vknot;

namespace {

constexpr int exit_check_failed = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

struct NumberedLine {
    int number;
    std::string text;
};

std::vector<NumberedLine> payload_lines(const std::string& path) {
    std::vector<NumberedLine> out;
    std::istringstream in(slurp(path));
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (!read_diagram_lines(line).empty()) out.push_back({n, line});
    }
    return out;
}

template <class F>
auto parse_at(const std::string& path, const NumberedLine& l, F&& parser) {
    try {
        return parser(l.text);
    } catch (const Error& e) {
        throw UsageError(path + ":" + std::to_string(l.number) + ": " + e.what());
    }
}

// Same numbering rule as the parsers: numeric labels by value, then other
// labels in order of first appearance.
ArrowId resolve_label(const std::vector<std::string>& labels_in_order, const std::string& want) {
    std::vector<std::string> numeric, named, seen;
    for (const auto& lb : labels_in_order) {
        if (std::find(seen.begin(), seen.end(), lb) != seen.end()) continue;
        seen.push_back(lb);
        bool digits = !lb.empty() && std::all_of(lb.begin(), lb.end(), [](unsigned char ch) {
            return std::isdigit(ch);
        });
        (digits ? numeric : named).push_back(lb);
    }
    std::sort(numeric.begin(), numeric.end(), [](const std::string& x, const std::string& y) {
        return std::stoll(x) < std::stoll(y);
    });
    ArrowId id = 1;
    for (const auto& lb : numeric) {
        if (lb == want) return id;
        ++id;
    }
    for (const auto& lb : named) {
        if (lb == want) return id;
        ++id;
    }
    throw UsageError("label '" + want + "' not in diagram");
}

std::vector<std::string> knot_labels(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) {
        if (tok[0] == '#') break;
        if (tok.size() >= 3) out.push_back(tok.substr(1, tok.size() - 2));
    }
    return out;
}

std::vector<std::string> string_labels(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) {
        if (tok[0] == '#') break;
        if (tok[0] == '*') tok = tok.substr(1);
        if (tok.size() >= 2) out.push_back(tok.substr(0, tok.size() - 1));
    }
    return out;
}

std::chrono::steady_clock::time_point t_start;
double elapsed_ms() {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t_start)
        .count();
}

int finish(json& report, bool as_json, int code) {
    report["elapsed_ms"] = elapsed_ms();
    if (as_json) std::cout << report.dump(2) << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    t_start = std::chrono::steady_clock::now();

    CLI::App app{"degree-one Vassiliev invariants of virtual knots"};
    app.require_subcommand(1);
    bool as_json = false;
    std::uint64_t seed = 1;
    app.add_flag("--json", as_json, "structured output");
    app.add_option("--seed", seed, "random seed (u64)");

    std::string in_a, in_b, at_label, level = "G", suite = "pt", data_dir = "data";
    bool mod2 = false, do_reduce = false, serial = false;
    long long trials = 100;
    int moves_n = 30;

    auto* c_pt = app.add_subcommand("pt", "index polynomial per diagram");
    c_pt->add_option("file", in_a)->required();
    c_pt->add_flag("--mod2", mod2, "coefficients mod 2");

    auto* c_sbm = app.add_subcommand("sbm", "singular based matrix per singular string");
    c_sbm->add_option("file", in_a)->required();
    c_sbm->add_flag("--reduce", do_reduce, "also print the primitive reduction");

    auto* c_bm = app.add_subcommand("basedmatrix", "based matrix per virtual string");
    c_bm->add_option("file", in_a)->required();
    c_bm->add_flag("--reduce", do_reduce, "also print the primitive reduction");

    auto* c_smooth = app.add_subcommand("smooth", "smooth a string at an arrow");
    c_smooth->add_option("file", in_a)->required();
    c_smooth->add_option("--at", at_label, "arrow label")->required();

    auto* c_glue = app.add_subcommand("glue", "glue a knot at a crossing");
    c_glue->add_option("file", in_a)->required();
    c_glue->add_option("--at", at_label, "crossing label")->required();

    auto* c_cmp = app.add_subcommand("compare", "compare two inputs at a given level");
    c_cmp->add_option("fileA", in_a)->required();
    c_cmp->add_option("fileB", in_b)->required();
    c_cmp->add_option("--level", level)->check(CLI::IsMember({"pt", "S", "G", "flat", "singular"}));

    auto* c_fuzz = app.add_subcommand("fuzz", "randomized invariance suites");
    c_fuzz->add_option("--suite", suite)
        ->check(CLI::IsMember({"pt", "mod2", "flat", "singular", "degree1"}));
    c_fuzz->add_option("--trials", trials);
    c_fuzz->add_option("--moves", moves_n);
    c_fuzz->add_flag("--serial", serial, "disable OpenMP");

    auto* c_demo = app.add_subcommand("demo", "recompute the worked separation example");
    c_demo->add_option("--data", data_dir, "corpus directory");

    // let --json/--seed appear after the subcommand as well
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return exit_usage;
    }

    json report;
    report["seed"] = seed;

    try {
        if (*c_pt) {
            report["command"] = mod2 ? "pt --mod2" : "pt";
            report["input"] = in_a;
            json results = json::array();
            for (const auto& l : payload_lines(in_a)) {
                auto k = parse_at(in_a, l, [](const std::string& t) { return parse_knot(t); });
                Poly p;
                try {
                    p = mod2 ? pt_mod2(k) : pt(k);
                } catch (const Error& e) {
                    throw UsageError(in_a + ":" + std::to_string(l.number) + ": " + e.what());
                }
                std::string rendered = render_poly(p);
                if (!as_json) std::cout << rendered << "\n";
                results.push_back({{"line", l.number}, {"poly", rendered}});
            }
            report["results"] = results;
        } else if (*c_sbm || *c_bm) {
            bool singular_mode = static_cast<bool>(*c_sbm);
            report["command"] = singular_mode ? "sbm" : "basedmatrix";
            report["input"] = in_a;
            report["reduce"] = do_reduce;
            json results = json::array();
            bool first = true;
            for (const auto& l : payload_lines(in_a)) {
                std::vector<std::vector<int>> full, reduced;
                if (singular_mode) {
                    auto s = parse_at(
                        in_a, l, [](const std::string& t) { return parse_singular_string(t); });
                    SBM m = from_singular_string(s);
                    full = m.b;
                    if (do_reduce) reduced = reduce_primitive_sbm(m).b;
                } else {
                    auto s = parse_at(
                        in_a, l, [](const std::string& t) { return parse_virtual_string(t); });
                    BasedMatrix m = from_string(s);
                    full = m.b;
                    if (do_reduce) reduced = reduce_primitive(m).b;
                }
                if (!as_json) {
                    if (!first) std::cout << "\n";
                    std::cout << serialize_matrix(full);
                    if (do_reduce) std::cout << "# reduced\n" << serialize_matrix(reduced);
                }
                json r = {{"line", l.number}, {"matrix", full}};
                if (do_reduce) r["reduced"] = reduced;
                results.push_back(r);
                first = false;
            }
            report["results"] = results;
        } else if (*c_smooth) {
            report["command"] = "smooth";
            report["input"] = in_a;
            report["at"] = at_label;
            json results = json::array();
            for (const auto& l : payload_lines(in_a)) {
                auto s =
                    parse_at(in_a, l, [](const std::string& t) { return parse_virtual_string(t); });
                ArrowId e = resolve_label(string_labels(l.text), at_label);
                FlatLink out = smooth(s, e);
                std::string rendered = serialize_link(out);
                if (!as_json) std::cout << rendered << "\n";
                results.push_back({{"line", l.number},
                                   {"link", rendered},
                                   {"intersection_index", intersection_index(out)}});
            }
            report["results"] = results;
        } else if (*c_glue) {
            report["command"] = "glue";
            report["input"] = in_a;
            report["at"] = at_label;
            json results = json::array();
            for (const auto& l : payload_lines(in_a)) {
                auto k = parse_at(in_a, l, [](const std::string& t) { return parse_knot(t); });
                ArrowId c = resolve_label(knot_labels(l.text), at_label);
                std::string rendered = serialize_string(glue(k, c));
                if (!as_json) std::cout << rendered << "\n";
                results.push_back({{"line", l.number}, {"singular_string", rendered}});
            }
            report["results"] = results;
        } else if (*c_cmp) {
            report["command"] = "compare";
            report["level"] = level;
            report["inputs"] = {in_a, in_b};
            auto first_payload = [&](const std::string& path) {
                auto ls = payload_lines(path);
                if (ls.empty()) throw UsageError(path + ": no diagram found");
                return ls.front();
            };
            auto la = first_payload(in_a), lb = first_payload(in_b);
            Verdict v;
            json evidence = json::array();
            if (level == "pt") {
                auto a = parse_at(in_a, la, [](const std::string& t) { return parse_knot(t); });
                auto b = parse_at(in_b, lb, [](const std::string& t) { return parse_knot(t); });
                Poly pa = pt(a), pb = pt(b);
                v = pa == pb ? Verdict::equal_at_fingerprint : Verdict::distinct;
                if (pa != pb) evidence.push_back({{"A", render_poly(pa)}, {"B", render_poly(pb)}});
            } else if (level == "S" || level == "G") {
                auto a = parse_at(in_a, la, [](const std::string& t) { return parse_knot(t); });
                auto b = parse_at(in_b, lb, [](const std::string& t) { return parse_knot(t); });
                FormalSum sa = level == "S" ? invariant_S(a) : invariant_G(a);
                FormalSum sb = level == "S" ? invariant_S(b) : invariant_G(b);
                v = compare_sums(sa, sb);
                for (const auto& [fp, c] : sum_sub(sa, sb).terms)
                    evidence.push_back({{"coeff", c}, {"fingerprint", to_hex(fp)}});
            } else if (level == "flat") {
                auto a = parse_at(in_a, la,
                                  [](const std::string& t) { return parse_virtual_string(t); });
                auto b = parse_at(in_b, lb,
                                  [](const std::string& t) { return parse_virtual_string(t); });
                Fingerprint fa = fingerprint_flat(a), fb = fingerprint_flat(b);
                v = fa == fb ? Verdict::equal_at_fingerprint : Verdict::distinct;
                if (fa != fb) evidence.push_back({{"A", to_hex(fa)}, {"B", to_hex(fb)}});
            } else {
                auto a = parse_at(in_a, la,
                                  [](const std::string& t) { return parse_singular_string(t); });
                auto b = parse_at(in_b, lb,
                                  [](const std::string& t) { return parse_singular_string(t); });
                Fingerprint fa = fingerprint_singular(a), fb = fingerprint_singular(b);
                v = fa == fb ? Verdict::equal_at_fingerprint : Verdict::distinct;
                if (fa != fb) evidence.push_back({{"A", to_hex(fa)}, {"B", to_hex(fb)}});
            }
            std::string verdict = v == Verdict::distinct ? "Distinct" : "EqualAtFingerprint";
            if (!as_json) {
                std::cout << verdict << "\n";
                for (const auto& e : evidence) std::cout << "  " << e.dump() << "\n";
            }
            report["verdict"] = verdict;
            report["evidence"] = evidence;
        } else if (*c_fuzz) {
            report["command"] = "fuzz";
            FuzzSuite fs = parse_suite(suite);
            if (trials < 0 || moves_n < 0) throw UsageError("counts must be non-negative");
            auto r = run_fuzz_suite(fs, trials, moves_n, seed, !serial);
            report["suite"] = suite;
            report["trials"] = r.trials;
            report["moves"] = moves_n;
            report["applications"] = r.applications;
            report["failures"] = json::array();
            for (const auto& f : r.failures) {
                std::string fname = "fuzz-" + suite + "-trial" + std::to_string(f.trial) + ".txt";
                std::ofstream out(fname);
                out << "# counterexample: suite " << suite << ", trial " << f.trial
                    << ", trial seed " << f.seed << "\n# " << f.detail << "\n"
                    << f.replay;
                report["failures"].push_back(
                    {{"trial", f.trial}, {"detail", f.detail}, {"replay_file", fname}});
                if (!as_json)
                    std::cout << "counterexample: trial " << f.trial << ": " << f.detail
                              << " (replay in " << fname << ")\n";
            }
            if (!as_json)
                std::cout << "suite " << suite << " (seed " << seed << "): " << r.applications
                          << " applications over " << r.trials << " trials, "
                          << r.failures.size() << " counterexamples\n";
            if (!r.ok()) return finish(report, as_json, exit_check_failed);
        } else if (*c_demo) {
            report["command"] = "demo";
            report["data"] = data_dir;
            json checks = json::array();
            bool all_ok = true;
            auto check = [&](const std::string& what, bool ok, const std::string& detail = "") {
                checks.push_back({{"check", what}, {"ok", ok}});
                if (!detail.empty()) checks.back()["detail"] = detail;
                if (!as_json)
                    std::cout << (ok ? "ok   " : "FAIL ") << what
                              << (detail.empty() ? "" : " [" + detail + "]") << "\n";
                all_ok = all_ok && ok;
            };
            auto load = [&](const std::string& name) { return slurp(data_dir + "/" + name); };

            auto k1 = parse_knot(read_diagram_lines(load("k1.gauss")).at(0));
            auto k2 = parse_knot(read_diagram_lines(load("k2.gauss")).at(0));
            auto left = parse_singular_string(read_diagram_lines(load("glue3.str")).at(0));
            auto right = parse_singular_string(read_diagram_lines(load("glue4.str")).at(0));
            auto b3_want = parse_matrix(load("b3.mat"));
            auto b4_want = parse_matrix(load("b4.mat"));

            check("writhe(K1) = 0", writhe(k1) == 0, "writhe " + std::to_string(writhe(k1)));
            check("writhe(K2) = 0", writhe(k2) == 0);
            check("glue(K1, 3) matches the bundled singular string",
                  structurally_equal(glue(k1, 3), left));
            check("glue(K1, 4) matches the bundled singular string",
                  structurally_equal(glue(k1, 4), right));

            SBM b3 = from_singular_string(left);
            SBM b4 = from_singular_string(right);
            auto matrix_diff = [](const std::vector<std::vector<int>>& got,
                                  const std::vector<std::vector<int>>& want) -> std::string {
                if (got.size() != want.size()) return "size mismatch";
                for (size_t i = 0; i < got.size(); ++i)
                    for (size_t j = 0; j < got.size(); ++j)
                        if (got[i][j] != want[i][j])
                            return "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                   ") computed " + std::to_string(got[i][j]) + ", bundled " +
                                   std::to_string(want[i][j]);
                return "";
            };
            check("b3 equals the bundled matrix", b3.b == b3_want, matrix_diff(b3.b, b3_want));
            check("b4 equals the bundled matrix", b4.b == b4_want, matrix_diff(b4.b, b4_want));
            check("b3 is primitive", reduce_primitive_sbm(b3).b == b3.b);
            check("b4 is primitive", reduce_primitive_sbm(b4).b == b4.b);
            check("b3 and b4 are not isomorphic", !is_isomorphic(b3, b4));
            check("no N move applies to b3", switch_candidates(b3).empty());
            check("no N move applies to b4", switch_candidates(b4).empty());
            check("no D move applies to b3",
                  classify_element(b3, b3.d_index()) == ElementClass::none);
            check("no D move applies to b4",
                  classify_element(b4, b4.d_index()) == ElementClass::none);
            check("b3 and b4 are not homologous", !homologous_sbm(b3, b4));

            check("S(K1) is the empty sum", invariant_S(k1).empty());
            check("S(K2) is the empty sum", invariant_S(k2).empty());
            check("G(K1) and G(K2) are distinct",
                  compare_sums(invariant_G(k1), invariant_G(k2)) == Verdict::distinct);

            auto vt = parse_knot(read_diagram_lines(load("virt_trefoil.gauss")).at(0));
            auto tref = parse_knot(read_diagram_lines(load("trefoil.gauss")).at(0));
            check("pt(virtualized trefoil) = -2 + 2*t^2", render_poly(pt(vt)) == "-2 + 2*t^2",
                  render_poly(pt(vt)));
            check("pt(unknot) = 0", render_poly(pt(parse_knot(""))) == "0");
            check("pt(classical trefoil) = 0", render_poly(pt(tref)) == "0", render_poly(pt(tref)));

            report["checks"] = checks;
            report["ok"] = all_ok;
            if (!as_json) std::cout << (all_ok ? "demo: all checks passed\n" : "demo: FAILURES\n");
            if (!all_ok) return finish(report, as_json, exit_check_failed);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }

    return finish(report, as_json, 0);
}
