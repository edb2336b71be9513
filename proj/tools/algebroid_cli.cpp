// Batch front end: parse a function-spec file, run mapping/characteristic/
// verification commands, emit CSV/JSON tables. Exit codes: 0 pass, 2 a
// verification suite failed, 1 usage or parse error.

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "algebroid/specfile.hpp"

using namespace algebroid;

namespace {

std::string f17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}
std::string f6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\'), out.push_back(c);
        else if (c == '\n') out += "\\n";
        else out.push_back(c);
    }
    return out;
}

int thread_count() {
    const char* env = std::getenv("ALGEBROID_THREADS");
    if (!env) return 1;
    int n = std::atoi(env);
    return std::max(1, std::min(n, 64));
}

void parallel_for(int items, int threads, const std::function<void(int)>& fn) {
    if (threads <= 1 || items <= 1) {
        for (int i = 0; i < items; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min(threads, items); ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < items; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

Complex parse_complex_arg(std::string s) {
    // accepted forms: "1.5", "1.5+2i", "-1.5-2i", "2i", "1.5,2"
    auto comma = s.find(',');
    if (comma != std::string::npos)
        return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
    if (!s.empty() && s.back() == 'i') {
        s.pop_back();
        size_t split = s.find_last_of("+-");
        if (split == std::string::npos || split == 0)
            return {0.0, s.empty() || s == "+" ? 1.0 : (s == "-" ? -1.0 : std::stod(s))};
        std::string re = s.substr(0, split), im = s.substr(split);
        if (im == "+") im = "1";
        if (im == "-") im = "-1";
        return {std::stod(re), std::stod(im)};
    }
    return {std::stod(s), 0.0};
}

std::string coefficients_json(const std::vector<Polynomial>& b) {
    std::string out = "{\n  \"v\": " + std::to_string(b.size() - 1) + ",\n  \"function\": [";
    for (size_t t = 0; t < b.size(); ++t) {
        out += (t ? ",\n    [" : "\n    [");
        int deg = std::max(b[t].degree(), 0);
        for (int k = 0; k <= deg; ++k) {
            Complex c = b[t].coeff(k);
            out += std::string(k ? ", " : "") + "[" + f17(c.real()) + ", " + f17(c.imag()) + "]";
        }
        out += "]";
    }
    out += "\n  ]\n}\n";
    return out;
}

std::string report_json(const std::vector<MarginReport>& reports, bool all_pass) {
    std::string out = "{\n  \"pass\": " + std::string(all_pass ? "true" : "false") +
                      ",\n  \"reports\": [";
    for (size_t i = 0; i < reports.size(); ++i) {
        const auto& rep = reports[i];
        out += (i ? ",\n    {" : "\n    {");
        out += "\n      \"name\": \"" + json_escape(rep.name) + "\",";
        out += "\n      \"pass\": " + std::string(rep.pass ? "true" : "false") + ",";
        out += "\n      \"slack_model\": {\"c0\": " + f17(rep.model.c0) +
               ", \"c1\": " + f17(rep.model.c1) + ", \"c0_cap\": " + f17(rep.model.c0_cap) +
               ", \"c1_cap\": " + f17(rep.model.c1_cap) +
               ", \"fitted\": " + (rep.model.fitted ? "true" : "false") + "},";
        out += "\n      \"rows\": [";
        for (size_t r = 0; r < rep.rows.size(); ++r) {
            const auto& row = rep.rows[r];
            out += (r ? ", " : "");
            out += "{\"label\": \"" + json_escape(row.label) + "\", \"r\": " + f17(row.r) +
                   ", \"lhs\": " + f17(row.lhs) + ", \"rhs\": " + f17(row.rhs) +
                   ", \"slack\": " + f17(row.slack()) + "}";
        }
        out += "],";
        out += "\n      \"notes\": [";
        for (size_t n = 0; n < rep.notes.size(); ++n)
            out += std::string(n ? ", " : "") + "\"" + json_escape(rep.notes[n]) + "\"";
        out += "]\n    }";
    }
    out += "\n  ]\n}\n";
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << content;
}

void print_report_table(const MarginReport& rep) {
    std::cout << rep.name << ": " << (rep.pass ? "PASS" : "FAIL") << "\n";
    if (rep.model.fitted)
        std::cout << "  slack model: C0 = " << f6(rep.model.c0) << " (cap " << f6(rep.model.c0_cap)
                  << "), C1 = " << f6(rep.model.c1) << " (cap " << f6(rep.model.c1_cap) << ")\n";
    for (auto& row : rep.rows)
        std::cout << "  " << row.label << "  r=" << f6(row.r) << "  lhs=" << f6(row.lhs)
                  << "  rhs=" << f6(row.rhs) << "  slack=" << f6(row.slack()) << "\n";
    for (auto& n : rep.notes) std::cout << "  note: " << n << "\n";
}

int run_characteristic(const std::string& spec_path, const std::string& out_path,
                       std::int64_t seed_override) {
    SpecFile spec = parse_spec_file(spec_path);
    if (seed_override >= 0) spec.seed = static_cast<std::uint64_t>(seed_override);
    algebroid::detail::CharacteristicEvaluator ev(spec.equation);
    if (!ev.ram) throw Error("characteristic needs a squarefree equation");

    std::vector<std::string> warnings;
    std::vector<double> radii;
    for (double r : spec.grid.radii) radii.push_back(snap_radius(ev.crit, r, &warnings));
    for (auto& w : warnings) std::cerr << "warning: " << w << "\n";

    std::vector<CharacteristicSample> rows(radii.size());
    parallel_for(static_cast<int>(radii.size()), thread_count(), [&](int i) {
        CharacteristicSample s;
        s.r = radii[i];
        s.m = ev.m(s.r);
        s.N = ev.N(s.r);
        s.T = s.m + s.N;
        s.Nx = ev.Nx(s.r);
        rows[i] = s;
    });

    std::string csv = "r,m,N,T,Nx\n";
    for (auto& s : rows)
        csv += f17(s.r) + "," + f17(s.m) + "," + f17(s.N) + "," + f17(s.T) + "," + f17(s.Nx) +
               "\n";
    write_file(out_path, csv);

    std::cout << "r        m        N        T        Nx\n";
    for (auto& s : rows)
        std::cout << f6(s.r) << "  " << f6(s.m) << "  " << f6(s.N) << "  " << f6(s.T) << "  "
                  << f6(s.Nx) << "\n";
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int run_op(const std::string& which, const std::string& spec_path, const std::string& map_label) {
    SpecFile spec = parse_spec_file(spec_path);
    const AlgebroidEquation& eq = spec.equation;
    if (which == "negate") {
        std::cout << coefficients_json(map_negate(eq).coeffs());
    } else if (which == "invert") {
        auto inv = map_invert(eq);
        if (!inv) {
            std::cout << "{\n  \"infinity\": true\n}\n";
        } else {
            std::cout << coefficients_json(inv->coeffs());
        }
    } else if (which == "derivative") {
        std::cout << coefficients_json(map_derivative(eq).coeffs());
    } else if (which == "pushforward") {
        const SmallFunctionTarget* found = nullptr;
        for (auto& t : spec.targets)
            if (t.label == map_label) found = &t;
        if (!found) throw Error("no target labeled '" + map_label + "' in the spec");
        std::cout << coefficients_json(pushforward(found->expr, eq).coeffs());
    }
    return 0;
}

int run_monodromy(const std::string& spec_path, const std::string& center_str, double radius) {
    SpecFile spec = parse_spec_file(spec_path);
    Complex center = parse_complex_arg(center_str);
    auto mp = monodromy(spec.equation, center, radius);
    std::cout << "base point: " << f6(mp.base_point.real())
              << (mp.base_point.imag() < 0 ? "-" : "+") << f6(std::abs(mp.base_point.imag()))
              << "i\n";
    std::cout << "cycles: ";
    for (auto& cyc : mp.cycles) {
        std::cout << "(";
        for (size_t i = 0; i < cyc.size(); ++i) std::cout << (i ? " " : "") << cyc[i] + 1;
        std::cout << ")";
    }
    std::cout << "\n";
    return 0;
}

int run_verify(const std::string& which, const std::string& spec_path, std::string out_prefix,
               std::int64_t seed_override) {
    SpecFile spec = parse_spec_file(spec_path);
    if (seed_override >= 0) spec.seed = static_cast<std::uint64_t>(seed_override);
    if (out_prefix.empty()) {
        out_prefix = "verify_" + which;
        for (auto& c : out_prefix)
            if (c == '.') c = '_';
    }

    std::vector<MarginReport> reports;
    if (which == "thm2.5") {
        if (spec.targets.empty()) throw Error("thm2.5 needs at least one target to use as h");
        for (auto& t : spec.targets) {
            auto rep = check_thm_2_5(spec.equation, t.expr, spec.grid);
            rep.name += " [h = " + t.label + "]";
            reports.push_back(std::move(rep));
        }
    } else if (which == "lemma3.1") {
        reports.push_back(check_lemma_3_1(spec.equation, spec.targets, spec.grid));
    } else if (which == "lemma3.2") {
        reports.push_back(check_lemma_3_2(spec.equation, 4, 10, spec.seed));
    } else if (which == "lemma3.3") {
        if (spec.targets.empty())
            throw Error("lemma3.3 needs targets (wronskian rows; the last target is g)");
        std::vector<MapExpr> fs;
        for (size_t i = 0; i + 1 < spec.targets.size(); ++i) fs.push_back(spec.targets[i].expr);
        if (fs.empty()) fs.push_back(spec.targets.back().expr);
        MapExpr g = spec.targets.back().expr;
        reports.push_back(check_lemma_3_3(fs, g, spec.equation, 100, spec.seed));
    } else if (which == "pw") {
        std::mt19937_64 rng(spec.seed);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        std::vector<Complex> acoef;
        for (size_t i = 0; i < spec.targets.size(); ++i) acoef.emplace_back(u(rng), u(rng));
        reports.push_back(
            check_pw_invariance(spec.equation, spec.targets, spec.s, acoef, 20, spec.seed));
    } else if (which == "smt") {
        reports.push_back(check_smt(spec.equation, spec.targets, spec.epsilon, spec.grid));
    }

    bool all_pass = true;
    for (auto& rep : reports) all_pass &= rep.pass;

    write_file(out_prefix + ".json", report_json(reports, all_pass));
    std::string csv = "name,label,r,lhs,rhs,slack\n";
    for (auto& rep : reports)
        for (auto& row : rep.rows)
            csv += "\"" + rep.name + "\"," + row.label + "," + f17(row.r) + "," + f17(row.lhs) +
                   "," + f17(row.rhs) + "," + f17(row.slack()) + "\n";
    write_file(out_prefix + ".csv", csv);

    for (auto& rep : reports) print_report_table(rep);
    std::cout << "wrote " << out_prefix << ".json, " << out_prefix << ".csv\n";
    return all_pass ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"algebroid functions: equation algebra, characteristic functions, "
                 "and second-main-theorem verification"};
    app.require_subcommand(1);

    std::string spec_path, out_path, map_label, center_str, which;
    double radius = 0.5;
    int q = 1, s = 1;
    double epsilon = 0.5;
    std::int64_t seed_override = -1;

    auto* characteristic =
        app.add_subcommand("characteristic", "characteristic table (r, m, N, T, Nx) as CSV");
    characteristic->add_option("spec", spec_path, "spec file")->required();
    characteristic->add_option("--out", out_path, "CSV output path")->required();
    characteristic->add_option("--seed", seed_override, "override the spec seed");

    auto* op = app.add_subcommand("op", "mapping operations on the equation");
    op->add_option("which", which, "negate | invert | derivative | pushforward")
        ->required()
        ->check(CLI::IsMember({"negate", "invert", "derivative", "pushforward"}));
    op->add_option("spec", spec_path, "spec file")->required();
    op->add_option("--map", map_label, "target label for pushforward");

    auto* mono = app.add_subcommand("monodromy", "branch permutation around a critical point");
    mono->add_option("spec", spec_path, "spec file")->required();
    mono->add_option("--center", center_str, "critical point a+bi")->required();
    mono->add_option("--radius", radius, "loop radius")->required();

    auto* count = app.add_subcommand("count", "#(s+1, A_q) = C(q+s, s+1)");
    count->add_option("--q", q, "number of small functions")->required();
    count->add_option("--s", s, "degree parameter s")->required();

    auto* stable = app.add_subcommand("stable-s", "smallest s with count ratio < 1 + epsilon");
    stable->add_option("--q", q, "number of small functions")->required();
    stable->add_option("--epsilon", epsilon, "ratio slack")->required();

    auto* verify = app.add_subcommand("verify", "run a verification suite, write JSON + CSV");
    verify->add_option("which", which, "thm2.5 | lemma3.1 | lemma3.2 | lemma3.3 | pw | smt")
        ->required()
        ->check(CLI::IsMember({"thm2.5", "lemma3.1", "lemma3.2", "lemma3.3", "pw", "smt"}));
    verify->add_option("spec", spec_path, "spec file")->required();
    verify->add_option("--out", out_path, "output prefix for .json/.csv");
    verify->add_option("--seed", seed_override, "override the spec seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (characteristic->parsed())
            return run_characteristic(spec_path, out_path, seed_override);
        if (op->parsed()) return run_op(which, spec_path, map_label);
        if (mono->parsed()) return run_monodromy(spec_path, center_str, radius);
        if (count->parsed()) {
            std::cout << monomial_count(q, s + 1) << "\n";
            return 0;
        }
        if (stable->parsed()) {
            std::cout << find_stable_s(q, epsilon) << "\n";
            return 0;
        }
        if (verify->parsed()) return run_verify(which, spec_path, out_path, seed_override);
    } catch (const SpecError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
