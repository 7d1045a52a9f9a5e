#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "adjoints/adjoint.hpp"
#include "adjoints/errors.hpp"
#include "adjoints/io.hpp"
#include "adjoints/parse.hpp"
#include "adjoints/puiseux.hpp"

using namespace adjoints;

namespace {

struct CommonArgs {
    std::string problem_path;
    long m = -1;  // -1: keep the file value
    long n = std::numeric_limits<long>::min();
    std::string order;
    bool normalize_rows = false;
    std::int64_t precision_cap = 0;
    std::string divisors_path;
    std::string dump_path;
    std::string output_path;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_mn = true) {
    cmd->add_option("problem", args.problem_path, "problem file (JSON)")->required();
    if (with_mn) {
        cmd->add_option("--m", args.m, "power of the canonical sheaf");
        cmd->add_option("--n", args.n, "twist");
    }
    cmd->add_option("--order", args.order, "monomial order (degrevlex|lex)");
    cmd->add_flag("--normalize-rows", args.normalize_rows,
                  "scale constraint rows to primitive integer vectors");
    cmd->add_option("--precision-cap", args.precision_cap,
                    "upper bound for precision retries");
    cmd->add_option("--divisors", args.divisors_path, "extra divisor file");
    cmd->add_option("--dump-matrix", args.dump_path, "write the stacked matrix here");
}

int thread_count() {
    const char* env = std::getenv("ADJOINT_THREADS");
    if (!env) return 1;
    int n = std::atoi(env);
    return n > 0 ? n : 1;
}

struct LoadedProblem {
    ProblemFile file;
    std::vector<FormalPrimeDivisor> divisors;
    bool divisors_from_curve = false;
};

LoadedProblem load(const CommonArgs& args, bool auto_puiseux) {
    LoadedProblem lp;
    lp.file = load_problem(args.problem_path);
    if (args.m >= 0) lp.file.m = args.m;
    if (args.n != std::numeric_limits<long>::min()) lp.file.n = args.n;
    if (args.order == "degrevlex") lp.file.options.order = MonomialOrder::degrevlex;
    else if (args.order == "lex") lp.file.options.order = MonomialOrder::lex;
    else if (!args.order.empty()) throw FormatError("unknown order '" + args.order + "'");
    if (args.normalize_rows) lp.file.options.normalize_rows = true;
    if (args.precision_cap > 0) lp.file.options.precision_cap = args.precision_cap;
    lp.file.options.threads = thread_count();
    if (!args.divisors_path.empty()) {
        for (auto& d : load_divisor_file(args.divisors_path))
            lp.file.divisors.push_back(std::move(d));
    }
    for (const auto& d : lp.file.divisors)
        lp.divisors.push_back(FormalPrimeDivisor::make(d));
    long l = static_cast<long>(lp.file.F.num_vars()) - 2;
    if (auto_puiseux && lp.divisors.empty() && l == 1) {
        lp.divisors = curve_divisors(lp.file.F);
        lp.divisors_from_curve = true;
    }
    return lp;
}

// Runs the basis computation, growing curve-divisor precision on demand.
AdjointResult run_adjoints(LoadedProblem& lp, AdjointProblem* problem_out) {
    long d = lp.file.F.total_degree();
    std::int64_t frontier = 2 * d * d + 4;
    for (;;) {
        try {
            AdjointProblem p = AdjointProblem::make(lp.file.F, lp.file.m, lp.file.n,
                                                    lp.divisors, lp.file.options);
            AdjointResult res = adjoint_basis(p);
            if (problem_out) *problem_out = std::move(p);
            return res;
        } catch (const PrecisionExhausted&) {
            if (!lp.divisors_from_curve) throw;
            frontier *= 2;
            if (frontier > lp.file.options.precision_cap) throw;
            lp.divisors = curve_divisors(lp.file.F, frontier);
        }
    }
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") std::cout << content;
    else write_file(path, content);
}

int dispatch(const std::string& cmd, CommonArgs& args) {
    if (cmd == "adjoints") {
        LoadedProblem lp = load(args, /*auto_puiseux=*/true);
        AdjointProblem problem;
        AdjointResult res = run_adjoints(lp, &problem);
        if (!args.dump_path.empty()) emit(args.dump_path, dump_matrix(problem, res));
        for (const auto& f : res.basis) std::cout << f.to_string() << "\n";
        return 0;
    }
    if (cmd == "validate") {
        LoadedProblem lp = load(args, /*auto_puiseux=*/true);
        bool all_ok = true;
        for (const auto& phi : lp.divisors) {
            ValidationReport rep = validate_divisor(phi.data(), lp.file.F);
            std::cout << "divisor '" << phi.name() << "':\n" << rep.to_string() << "\n";
            all_ok = all_ok && rep.pass;
        }
        if (lp.divisors.empty()) std::cout << "no divisors\n";
        return all_ok ? 0 : 1;
    }
    if (cmd == "order") {
        LoadedProblem lp = load(args, /*auto_puiseux=*/true);
        for (const auto& phi : lp.divisors)
            std::cout << phi.name() << ": " << adjoint_order(phi, lp.file.F) << "\n";
        return 0;
    }
    if (cmd == "puiseux") {
        LoadedProblem lp = load(args, /*auto_puiseux=*/false);
        if (lp.file.F.num_vars() != 3)
            throw FormatError("puiseux expects a plane curve (three variables)");
        auto divisors = curve_divisors(lp.file.F);
        std::vector<DivisorData> data;
        for (const auto& phi : divisors) data.push_back(phi.data());
        emit(args.output_path, divisors_to_json_text(data) + "\n");
        return 0;
    }
    if (cmd == "genus") {
        LoadedProblem lp = load(args, /*auto_puiseux=*/false);
        if (lp.file.F.num_vars() != 3)
            throw FormatError("genus expects a plane curve (three variables)");
        lp.divisors = curve_divisors(lp.file.F);
        lp.divisors_from_curve = true;
        lp.file.m = 1;
        lp.file.n = 0;
        AdjointResult res = run_adjoints(lp, nullptr);
        std::cout << res.basis.size() << "\n";
        return 0;
    }
    if (cmd == "dump-matrix") {
        LoadedProblem lp = load(args, /*auto_puiseux=*/true);
        AdjointProblem problem;
        AdjointResult res = run_adjoints(lp, &problem);
        emit(args.output_path.empty() ? args.dump_path : args.output_path,
             dump_matrix(problem, res));
        return 0;
    }
    throw FormatError("unknown command '" + cmd + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"adjoint bases of projective hypersurfaces from formal prime divisors"};
    app.require_subcommand(1);
    CommonArgs args;
    std::string picked;
    for (const char* name : {"adjoints", "validate", "order", "puiseux", "genus", "dump-matrix"}) {
        CLI::App* sub = app.add_subcommand(name, "");
        add_common(sub, args);
        if (std::string(name) == "puiseux" || std::string(name) == "dump-matrix")
            sub->add_option("-o,--output", args.output_path, "output path (default stdout)");
        sub->callback([&picked, name] { picked = name; });
    }
    CLI11_PARSE(app, argc, argv);
    try {
        return dispatch(picked, args);
    } catch (const PrecisionExhausted& e) {
        std::cerr << "error: " << e.kind() << ": " << e.what() << "\n";
        return 3;
    } catch (const FrontierTooSmall& e) {
        std::cerr << "error: " << e.kind() << ": " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.kind() << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 4;
    }
}
