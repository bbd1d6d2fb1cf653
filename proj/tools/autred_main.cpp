// Command-line front end: reduce, include, generate, bench, convert.
// Exit codes: 0 success (or "included"), 1 not included, 2 unknown,
// 3 usage / I/O / parameter errors.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "autred/automaton.hpp"
#include "autred/ba_io.hpp"
#include "autred/generate.hpp"
#include "autred/inclusion.hpp"
#include "autred/oracles.hpp"
#include "autred/reduction.hpp"

namespace fs = std::filesystem;
using namespace autred;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

int parse_lookahead(const std::string& text) {
    if (text == "auto") return 0;
    size_t used = 0;
    int k = std::stoi(text, &used);
    if (used != text.size() || k < 1 || k > 32)
        throw std::runtime_error("lookahead must be 1..32 or 'auto'");
    return k;
}

struct Grid {
    std::vector<uint32_t> n{50};
    std::vector<double> td{2.0};
    std::vector<int> k{12};
    uint32_t count = 20;
    uint32_t sigma = 2;
    double ad = 0.5;
    uint64_t seed = 1;
    bool sat = false;
};

Grid parse_grid(const std::string& spec) {
    Grid g;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("bench: expected key=value, got '" + item + "'");
        std::string key = item.substr(0, eq);
        std::string val = item.substr(eq + 1);
        std::vector<std::string> parts;
        std::stringstream vs(val);
        std::string part;
        while (std::getline(vs, part, ',')) parts.push_back(part);
        if (parts.empty()) throw std::runtime_error("bench: empty value for " + key);
        if (key == "n") {
            g.n.clear();
            for (auto& p : parts) g.n.push_back(static_cast<uint32_t>(std::stoul(p)));
        } else if (key == "td") {
            g.td.clear();
            for (auto& p : parts) g.td.push_back(std::stod(p));
        } else if (key == "k") {
            g.k.clear();
            for (auto& p : parts) g.k.push_back(parse_lookahead(p));
        } else if (key == "count") {
            g.count = static_cast<uint32_t>(std::stoul(parts.at(0)));
        } else if (key == "sigma") {
            g.sigma = static_cast<uint32_t>(std::stoul(parts.at(0)));
        } else if (key == "ad") {
            g.ad = std::stod(parts.at(0));
        } else if (key == "seed") {
            g.seed = std::stoull(parts.at(0));
        } else if (key == "sat") {
            g.sat = std::stoul(parts.at(0)) != 0;
        } else {
            throw std::runtime_error("bench: unknown grid key '" + key + "'");
        }
    }
    return g;
}

int cmd_reduce(const std::string& in_path, int k, bool finite, bool sat,
               const std::string& out_path, const std::string& report_path,
               bool self_check) {
    Semantics sem = finite ? Semantics::Finite : Semantics::Buchi;
    Automaton input = parse_ba(slurp(in_path), sem);
    ReductionReport report;
    Automaton output = sat ? heavy_sat(input, k, &report) : heavy(input, k, &report);
    std::string text = write_ba(output);
    if (out_path.empty())
        std::cout << text;
    else
        spit(out_path, text);
    if (report_path.empty())
        std::cerr << report.to_text();
    else
        spit(report_path, report.to_text());
    if (self_check) {
        if (finite) {
            try {
                if (nfa_language_difference(input, output)) {
                    std::cerr << "self-check FAILED: languages differ\n";
                    return 3;
                }
            } catch (const std::length_error&) {
                std::cerr << "self-check inconclusive: subset space over budget\n";
            }
        } else {
            if (nba_lasso_falsifier(input, output, 4, 4)) {
                std::cerr << "self-check FAILED: languages differ on a lasso word\n";
                return 3;
            }
        }
        std::cerr << "self-check passed\n";
    }
    return 0;
}

int cmd_include(const std::string& a_path, const std::string& b_path,
                const std::string& k_text, bool finite, bool race) {
    Semantics sem = finite ? Semantics::Finite : Semantics::Buchi;
    Automaton a = parse_ba(slurp(a_path), sem);
    Automaton b = parse_ba(slurp(b_path), sem);
    InclusionOptions opts;
    opts.k = parse_lookahead(k_text);
    opts.finite = finite;
    InclusionResult res;
    if (race) {
        // Cheap schedule first: low lookahead, small counterexample bounds.
        InclusionOptions sprint = opts;
        sprint.k = 1;
        sprint.max_prefix = 8;
        sprint.max_loop = 8;
        res = check_inclusion(a, b, sprint);
    }
    if (!race || res.verdict == InclusionVerdict::Unknown)
        res = check_inclusion(a, b, opts);
    std::cerr << "decided at " << res.stage << "\n";
    switch (res.verdict) {
        case InclusionVerdict::Included:
            std::cout << "INCLUDED\n";
            return 0;
        case InclusionVerdict::NotIncluded:
            std::cout << "NOT-INCLUDED\n";
            if (res.counterexample)
                std::cout << format_counterexample(a, *res.counterexample) << "\n";
            return 1;
        case InclusionVerdict::Unknown:
            std::cout << "UNKNOWN\n";
            return 2;
    }
    return 3;
}

int cmd_generate(uint32_t n, uint32_t sigma, double td, double ad, uint64_t seed,
                 uint32_t count, const std::string& dir) {
    TVParams params{n, sigma, td, ad};
    fs::create_directories(dir);
    std::ostringstream manifest;
    for (uint32_t i = 0; i < count; ++i) {
        uint64_t instance_seed = seed + i;
        Automaton aut = tabakov_vardi(params, instance_seed, Semantics::Buchi);
        char name[96];
        std::snprintf(name, sizeof name, "tv_%04u.ba", i);
        fs::path path = fs::path(dir) / name;
        spit(path.string(), write_ba(aut));
        char line[256];
        std::snprintf(line, sizeof line, "n=%u sigma=%u td=%g ad=%g %llu %s\n", n,
                      sigma, td, ad, static_cast<unsigned long long>(instance_seed),
                      path.string().c_str());
        manifest << line;
    }
    spit((fs::path(dir) / "manifest.txt").string(), manifest.str());
    std::cerr << "wrote " << count << " automata to " << dir << "\n";
    return 0;
}

int cmd_bench(const std::string& spec, const std::string& out_path) {
    Grid g = parse_grid(spec);
    std::ostringstream csv;
    csv << "n,td,k,sigma,ad,count,sat,mean_states_pct,mean_transitions_pct,"
           "mean_ms,median_ms\n";
    for (uint32_t n : g.n)
        for (double td : g.td)
            for (int k : g.k) {
                if (k == 0) k = 12;
                std::vector<double> spct, tpct, ms;
                for (uint32_t i = 0; i < g.count; ++i) {
                    TVParams params{n, g.sigma, td, g.ad};
                    Automaton a = tabakov_vardi(params, g.seed + i, Semantics::Buchi);
                    auto t0 = std::chrono::steady_clock::now();
                    Automaton r = g.sat ? heavy_sat(a, k) : heavy(a, k);
                    auto t1 = std::chrono::steady_clock::now();
                    ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
                    spct.push_back(100.0 * r.num_states() / a.num_states());
                    tpct.push_back(a.num_transitions()
                                       ? 100.0 * r.num_transitions() / a.num_transitions()
                                       : 100.0);
                }
                double mean_s = 0, mean_t = 0, mean_ms = 0;
                for (size_t i = 0; i < ms.size(); ++i) {
                    mean_s += spct[i];
                    mean_t += tpct[i];
                    mean_ms += ms[i];
                }
                size_t c = ms.empty() ? 1 : ms.size();
                char row[256];
                std::snprintf(row, sizeof row, "%u,%g,%d,%u,%g,%u,%d,%.2f,%.2f,%.3f,%.3f\n",
                              n, td, k, g.sigma, g.ad, g.count, g.sat ? 1 : 0,
                              mean_s / c, mean_t / c, mean_ms / c, median(ms));
                csv << row;
            }
    if (out_path.empty())
        std::cout << csv.str();
    else
        spit(out_path, csv.str());
    return 0;
}

int cmd_convert(const std::string& in_path, const std::string& out_path) {
    Automaton aut = parse_ba(slurp(in_path), Semantics::Buchi);
    std::string name = fs::path(in_path).stem().string();
    if (name.empty()) name = "automaton";
    std::string text = write_timbuk(aut, name);
    if (out_path.empty())
        std::cout << text;
    else
        spit(out_path, text);
    return 0;
}

// The documented flag surface uses single-dash long names (-finite, -sat,
// -race, -sigma, ...).  Rewrite those to the double-dash spellings the parser
// understands; everything else passes through untouched.
std::vector<std::string> normalize_args(int argc, char** argv) {
    static const char* kLong[] = {"finite", "sat",  "race",  "sigma",
                                  "td",     "ad",   "seed",  "count",
                                  "self-check", "report"};
    std::vector<std::string> out;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg.size() > 2 && arg[0] == '-' && arg[1] != '-') {
            std::string body = arg.substr(1);
            auto eq = body.find('=');
            std::string head = eq == std::string::npos ? body : body.substr(0, eq);
            for (const char* name : kLong)
                if (head == name) {
                    arg = "-" + arg;
                    break;
                }
        }
        out.push_back(std::move(arg));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"language-preserving automaton reduction and inclusion toolkit"};
    app.require_subcommand(1);

    std::string in_path, b_path, out_path, report_path, k_text = "auto", grid_spec;
    bool finite = false, sat = false, race = false, self_check = false;
    int k_reduce = 12;
    uint32_t gen_n = 10, gen_sigma = 2, gen_count = 10;
    double gen_td = 2.0, gen_ad = 0.5;
    uint64_t gen_seed = 1;

    auto* reduce = app.add_subcommand("reduce", "reduce an automaton, preserving its language");
    reduce->add_option("input", in_path, ".ba input")->required();
    reduce->add_option("-k", k_reduce, "lookahead (default 12)")->check(CLI::Range(1, 32));
    reduce->add_flag("--finite", finite, "finite-word semantics");
    reduce->add_flag("--sat", sat, "also saturate transitions between reduction rounds");
    reduce->add_option("-o", out_path, "output path (default stdout)");
    reduce->add_option("--report", report_path, "write the pass report here instead of stderr");
    reduce->add_flag("--self-check", self_check,
                     "compare input and output languages with a bounded falsifier");

    auto* include = app.add_subcommand("include", "decide language inclusion A <= B");
    include->add_option("A", in_path, "left .ba input")->required();
    include->add_option("B", b_path, "right .ba input")->required();
    include->add_option("-k", k_text, "lookahead 1..32 or 'auto'");
    include->add_flag("--finite", finite, "finite-word semantics");
    include->add_flag("--race", race, "try a cheap low-lookahead schedule first");

    auto* generate = app.add_subcommand("generate", "write a random-automaton corpus");
    generate->add_option("-n", gen_n, "states per automaton")->check(CLI::Range(1u, 1000000u));
    generate->add_option("--sigma", gen_sigma, "alphabet size")->check(CLI::Range(1u, 64u));
    generate->add_option("--td", gen_td, "transition density");
    generate->add_option("--ad", gen_ad, "acceptance density");
    generate->add_option("--seed", gen_seed, "base seed; instance i uses seed+i");
    generate->add_option("--count", gen_count, "number of automata");
    generate->add_option("-o", out_path, "output directory")->required();

    auto* bench = app.add_subcommand("bench", "run the reducer over a parameter grid");
    bench->add_option("grid", grid_spec,
                      "grid spec, e.g. n=50;td=1.4,1.8;k=12;count=20;sigma=2;ad=0.5;seed=1;sat=0")
        ->required();
    bench->add_option("-o", out_path, "CSV output path (default stdout)");

    auto* convert = app.add_subcommand("convert", "render a .ba automaton in timbuk syntax");
    convert->add_option("input", in_path, ".ba input")->required();
    convert->add_option("-o", out_path, "output path (default stdout)");

    auto args = normalize_args(argc, argv);
    std::vector<const char*> ptrs{argv[0]};
    for (auto& a : args) ptrs.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(ptrs.size()), ptrs.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        if (app.got_subcommand(reduce))
            return cmd_reduce(in_path, k_reduce, finite, sat, out_path, report_path,
                              self_check);
        if (app.got_subcommand(include))
            return cmd_include(in_path, b_path, k_text, finite, race);
        if (app.got_subcommand(generate))
            return cmd_generate(gen_n, gen_sigma, gen_td, gen_ad, gen_seed, gen_count,
                                out_path);
        if (app.got_subcommand(bench)) return cmd_bench(grid_spec, out_path);
        if (app.got_subcommand(convert)) return cmd_convert(in_path, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}
