#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "halfline/darboux.hpp"
#include "halfline/direct.hpp"
#include "halfline/errors.hpp"
#include "halfline/examples.hpp"
#include "halfline/gelfand_levitan.hpp"
#include "halfline/io.hpp"
#include "halfline/marchenko.hpp"
#include "halfline/resonance.hpp"

namespace fs = std::filesystem;
using namespace halfline;
using nlohmann::json;

namespace {

double r12(double x) { return io::round12(x); }

json r12(const std::vector<double>& v) {
    json out = json::array();
    for (double x : v) out.push_back(r12(x));
    return out;
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

json rounded_spec(const OperatorSpec& spec) {
    json j = io::spec_to_json(spec);
    j["b"] = r12(spec.potential.b);
    j["cells"] = r12(spec.potential.cells);
    if (!spec.boundary.is_dirichlet()) j["boundary"]["cot_theta"] = r12(spec.boundary.cot_theta);
    return j;
}

void require_readable(const std::string& path) {
    if (!std::ifstream(path)) throw InvalidInput("cannot read " + path);
}

// Creates the directory and checks that a file can be written there.
fs::path output_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    const fs::path probe = fs::path(dir) / ".write_test";
    {
        std::ofstream out(probe);
        if (!out) throw InvalidInput("cannot write into " + dir);
    }
    fs::remove(probe, ec);
    return dir;
}

void require_output_file(const std::string& path) {
    const fs::path p(path);
    if (p.has_parent_path()) output_dir(p.parent_path().string());
}

void positive(double x, const char* name) {
    if (!(x > 0.0) || !std::isfinite(x)) throw InvalidInput(std::string(name) + " must be positive");
}

SampledFunction real_samples(const SampledFunction& f, bool modulus) {
    SampledFunction out{f.grid, {}};
    for (const auto& v : f.values) out.values.emplace_back(modulus ? std::abs(v) : v.real(), modulus ? 0.0 : v.imag());
    return out;
}

json bound_state_json(const BoundStateSet& bs) {
    json out = json::array();
    for (const auto& b : bs) out.push_back({{"gamma", r12(b.gamma)}, {"g", r12(b.g)}, {"m", r12(b.m)}});
    return out;
}

json resonance_json(const OperatorSpec& spec, double beta_max) {
    const auto rep = analyze_resonances(spec, beta_max);
    json res = json::array();
    for (const auto& r : rep.resonances)
        res.push_back({{"gamma", r12(r.gamma)},
                       {"eligible", r.eligibility == Eligibility::Eligible},
                       {"simple", r.simple},
                       {"g_squared", r12(r.g_squared)}});
    return {{"beta_max", r12(beta_max)},
            {"M", rep.M},
            {"bound_states", bound_state_json(bound_states(spec, beta_max))},
            {"resonances", res}};
}

SampledFunction h_samples(const OperatorSpec& spec, double beta_max, double step) {
    return sample_h(spec, uniform_grid(-beta_max, beta_max, step));
}

// Direct solve: F, S and |F| on [0, kmax].
void run_direct(const std::string& spec_path, const std::string& out, double kmax, double dk) {
    positive(kmax, "kmax");
    positive(dk, "dk");
    const auto spec = io::read_spec(spec_path);
    const auto dir = output_dir(out);
    const auto k = uniform_grid(0.0, kmax, dk);
    const auto F = sample_jost(spec, k);
    io::write_csv((dir / "jost.csv").string(), F);
    io::write_csv((dir / "scattering.csv").string(), sample_scattering(spec, k));
    io::write_csv((dir / "abs_jost.csv").string(), real_samples(F, true));
}

void run_resonances(const std::string& spec_path, double beta_max, const std::string& out, const std::string& h_csv,
                    double h_step) {
    const auto spec = io::read_spec(spec_path);
    if (std::isnan(beta_max)) beta_max = default_beta_max(spec);
    positive(beta_max, "beta-max");
    positive(h_step, "h-step");
    if (!out.empty()) require_output_file(out);
    if (!h_csv.empty()) require_output_file(h_csv);
    const json rep = resonance_json(spec, beta_max);
    if (out.empty())
        std::cout << rep.dump(2) << '\n';
    else
        write_json(out, rep);
    if (!h_csv.empty()) io::write_csv(h_csv, h_samples(spec, beta_max, h_step));
}

struct DarbouxArgs {
    std::string spec, out;
    double gamma = 0.0, g = 0.0;
    int refine = DarbouxOptions{}.refine;
    bool verify = false;
};

void run_darboux(const DarbouxArgs& a, Direction dir) {
    positive(a.gamma, "gamma");
    if (a.refine < 1) throw InvalidInput("refine must be positive");
    require_output_file(a.out);
    const auto spec = io::read_spec(a.spec);
    DarbouxOptions opt;
    opt.refine = a.refine;
    const auto res = dir == Direction::Add ? add_bound_state(spec, a.gamma, opt)
                                           : remove_bound_state(spec, a.gamma, a.g, opt);
    write_json(a.out, rounded_spec(res.spec));
    json rep = {{"gamma", r12(res.gamma)},
                {"g_squared", r12(res.g_squared)},
                {"g", r12(res.bound_state.g)},
                {"m", r12(res.bound_state.m)},
                {"support_residual", r12(res.support_residual)}};
    if (a.verify) {
        const auto k = uniform_grid(0.4, 20.0, 0.4);
        const auto G = transform_jost(sample_jost(spec, k), res.gamma, dir);
        const auto F = sample_jost(res.spec, k);
        double err = 0.0;
        for (std::size_t i = 0; i < k.size(); ++i)
            err = std::max(err, std::abs(F.values[i] - G.values[i]) / std::abs(G.values[i]));
        rep["jost_error"] = r12(err);
        std::cout << rep.dump(2) << '\n';
        if (err > 1e-6) throw VerificationError("transformed Jost function off the rational update by " + std::to_string(err));
        if (res.support_residual > 1e-6 * (1.0 + spec.potential.max_abs()))
            throw VerificationError("transformed potential does not vanish beyond b");
        return;
    }
    std::cout << rep.dump(2) << '\n';
}

json inversion_report(const InversionResult& r) {
    json sols = json::array();
    for (const auto& s : r.solutions) {
        json j = {{"kernel_residual", r12(s.kernel_residual)},
                  {"s_error", r12(s.s_error)},
                  {"bound_states", bound_state_json(s.bound_states)},
                  {"integral_of_potential", r12(integral_of_potential(s.spec))}};
        if (s.spec.boundary.is_dirichlet())
            j["dirichlet"] = true;
        else
            j["cot_theta"] = r12(s.spec.boundary.cot_theta);
        sols.push_back(j);
    }
    return {{"case", to_string(r.tag)},
            {"solutions", sols},
            {"residuals",
             {{"dirichlet_deviation", r12(r.dirichlet_deviation)},
              {"cot_spread", r12(r.cot_spread)},
              {"jost_relation_error", r12(r.jost_relation_error)},
              {"integral_difference", r12(r.integral_difference)},
              {"tail_residual", r12(r.tail_residual)},
              {"fit_error", r12(r.detection.fit_error)}}}};
}

void verify_inversion(const InversionResult& r) {
    for (const auto& s : r.solutions)
        if (!(s.s_error <= 1e-3)) throw VerificationError("reconstructed operator misses S by " + std::to_string(s.s_error));
    if (r.tag == CaseTag::III && !(std::abs(r.integral_difference) <= 1e-2))
        throw VerificationError("case III solutions have different potential integrals");
}

void write_inversion(const fs::path& dir, const InversionResult& r) {
    for (std::size_t i = 0; i < r.solutions.size(); ++i)
        write_json(dir / ("solution_" + std::to_string(i + 1) + ".json"), rounded_spec(r.solutions[i].spec));
    write_json(dir / "report.json", inversion_report(r));
}

void run_invert_s(const std::string& csv, double bmax, int cells, const std::string& out, bool verify) {
    positive(bmax, "bmax");
    if (cells < 1) throw InvalidInput("cells must be positive");
    require_readable(csv);
    const auto dir = output_dir(out);
    const auto r = invert_scattering(io::read_csv(csv), bmax, cells);
    write_inversion(dir, r);
    if (verify) verify_inversion(r);
}

json family_report(const SolutionFamily& fam) {
    json members = json::array();
    for (const auto& m : fam.members) {
        json j = {{"mask", m.mask}, {"modulus_error", r12(m.modulus_error)}};
        if (m.spec.boundary.is_dirichlet())
            j["dirichlet"] = true;
        else
            j["cot_theta"] = r12(m.spec.boundary.cot_theta);
        json gammas = json::array(), gs = json::array();
        for (const auto& b : m.bound_states) {
            gammas.push_back(r12(b.gamma));
            gs.push_back(r12(b.g));
        }
        j["gammas"] = gammas;
        j["gs"] = gs;
        members.push_back(j);
    }
    json res = json::array();
    for (const auto& r : fam.resonances)
        res.push_back({{"gamma", r12(r.gamma)}, {"m_squared", r12(r.m_squared)}, {"eligible", r.eligible}});
    return {{"theta_class", to_string(fam.theta_class)},
            {"M", fam.M},
            {"eligible_betas", r12(fam.eligible_betas)},
            {"base_resonances", res},
            {"members", members},
            {"residuals",
             {{"max_modulus_error", r12(fam.max_modulus_error)},
              {"outer_mismatch", r12(fam.outer_mismatch)},
              {"base_tail_residual", r12(fam.base_tail_residual)},
              {"outer_tail_residual", r12(fam.outer_tail_residual)},
              {"fit_error", r12(fam.fit_error)}}}};
}

void write_family(const fs::path& dir, const SolutionFamily& fam) {
    for (const auto& m : fam.members)
        write_json(dir / ("member_" + std::to_string(m.mask) + ".json"), rounded_spec(m.spec));
    write_json(dir / "family.json", family_report(fam));
}

void run_invert_absf(const std::string& csv, double beta_max, double bmax, int cells, const std::string& out) {
    positive(beta_max, "beta-max");
    positive(bmax, "bmax");
    if (cells < 1) throw InvalidInput("cells must be positive");
    require_readable(csv);
    const auto dir = output_dir(out);
    auto absF = io::read_csv(csv);
    for (auto& v : absF.values) v = std::abs(v);
    write_family(dir, enumerate_solutions(absF, beta_max, bmax, cells));
}

void demo_spectrum(const fs::path& dir, const OperatorSpec& spec, double beta_max, const std::string& name) {
    write_json(dir / (name + ".json"), rounded_spec(spec));
    write_json(dir / (name + "_report.json"), resonance_json(spec, beta_max));
    io::write_csv((dir / (name + "_h.csv")).string(), h_samples(spec, beta_max, 0.01));
}

void run_demo(const std::string& name, const std::string& out) {
    const auto dir = output_dir(out);
    if (name == "ex61") {
        const auto spec = examples::ex61();
        demo_spectrum(dir, spec, 5.0, name);
        const auto add = add_bound_state(spec, 1.0);
        write_json(dir / "ex61_added.json", rounded_spec(add.spec));
        write_json(dir / "ex61_added_report.json",
                   {{"gamma", r12(add.gamma)},
                    {"g_squared", r12(add.g_squared)},
                    {"cot_theta", r12(add.spec.boundary.cot_theta)},
                    {"max_abs_potential", r12(add.spec.potential.max_abs())}});
        if (add.spec.potential.max_abs() > 1e-8) throw VerificationError("adding the resonance changed V = 0");
    } else if (name == "ex62a" || name == "ex62b") {
        const auto spec = examples::by_name(name);
        demo_spectrum(dir, spec, default_beta_max(spec), name);
    } else if (name == "ex62c") {
        demo_spectrum(dir, examples::ex62c(), 10.0, name);
    } else if (name == "ex63") {
        const auto root = examples::root_solve_example_63_a();
        const auto spec = examples::ex63(root.a);
        const auto c = full_line_coefficients(spec, 0.0);
        const auto S = sample_scattering(spec, examples::default_k());
        write_json(dir / "ex63.json", rounded_spec(spec));
        io::write_csv((dir / "ex63_scattering.csv").string(), S);
        const auto r = invert_scattering(S, 1.0, 100);
        write_inversion(dir, r);
        write_json(dir / "ex63_report.json",
                   {{"a", r12(root.a)},
                    {"residual", r12(root.residual)},
                    {"T0", r12(c.T.real())},
                    {"L0", r12(c.L.real())},
                    {"R0", r12(c.R.real())}});
        if (root.residual > 1e-10) throw VerificationError("root of the defining equation not converged");
        verify_inversion(r);
    } else {
        throw InvalidInput("unknown demo '" + name + "'");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Half-line Schrodinger scattering: direct problem, resonances, Darboux transforms, inversion"};
    app.require_subcommand(1);

    std::string spec, out, csv, h_csv, demo_name;
    double kmax = 100.0, dk = 0.01, beta_max = std::nan(""), bmax = 1.0, h_step = 0.01;
    int cells = 512;
    bool verify = false;

    auto* direct = app.add_subcommand("direct", "F, S and |F| on a k-grid");
    direct->add_option("--spec", spec, "operator spec JSON")->required();
    direct->add_option("--out", out, "output directory")->required();
    direct->add_option("--kmax", kmax)->capture_default_str();
    direct->add_option("--dk", dk)->capture_default_str();

    auto* res = app.add_subcommand("resonances", "bound states, imaginary resonances and eligibility");
    res->add_option("--spec", spec, "operator spec JSON")->required();
    res->add_option("--beta-max", beta_max, "search window; default from the potential depth");
    res->add_option("--out", out, "report JSON (stdout when omitted)");
    res->add_option("--h-csv", h_csv, "samples of H(beta) on [-beta_max, beta_max]");
    res->add_option("--h-step", h_step)->capture_default_str();

    DarbouxArgs dargs;
    auto* darboux = app.add_subcommand("darboux", "add or remove a bound state");
    darboux->require_subcommand(1);
    auto* add = darboux->add_subcommand("add", "turn an eligible resonance into a bound state");
    auto* remove = darboux->add_subcommand("remove", "remove a bound state with norming constant g");
    for (auto* sub : {add, remove}) {
        sub->add_option("--spec", dargs.spec, "operator spec JSON")->required();
        sub->add_option("--gamma", dargs.gamma)->required();
        sub->add_option("--out", dargs.out, "transformed spec JSON")->required();
        sub->add_option("--refine", dargs.refine, "output cells per input cell")->capture_default_str();
        sub->add_flag("--verify", dargs.verify, "compare against the rational Jost update");
    }
    remove->add_option("--g", dargs.g, "Gel'fand-Levitan norming constant")->required();

    auto* invs = app.add_subcommand("invert-s", "Marchenko inversion of sampled S(k)");
    invs->add_option("--csv", csv, "k,re,im")->required();
    invs->add_option("--bmax", bmax)->capture_default_str();
    invs->add_option("--cells", cells)->capture_default_str();
    invs->add_option("--out", out, "output directory")->required();
    invs->add_flag("--verify", verify, "fail unless every solution reproduces S");

    auto* inva = app.add_subcommand("invert-absf", "Gel'fand-Levitan family from sampled |F(k)|");
    inva->add_option("--csv", csv, "k,|F| (a third column is folded into the modulus)")->required();
    inva->add_option("--beta-max", beta_max)->required();
    inva->add_option("--bmax", bmax)->capture_default_str();
    inva->add_option("--cells", cells)->capture_default_str();
    inva->add_option("--out", out, "output directory")->required();
    inva->add_flag("--verify", verify, "members are always checked against |F|");

    auto* demo = app.add_subcommand("demo", "reproduce a worked example");
    demo->add_option("name", demo_name, "ex61|ex62a|ex62b|ex62c|ex63")
        ->required()
        ->check(CLI::IsMember({"ex61", "ex62a", "ex62b", "ex62c", "ex63"}));
    demo->add_option("--out", out, "output directory (default: the example name)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*direct) {
            run_direct(spec, out, kmax, dk);
        } else if (*res) {
            run_resonances(spec, beta_max, out, h_csv, h_step);
        } else if (*darboux) {
            run_darboux(dargs, *add ? Direction::Add : Direction::Remove);
        } else if (*invs) {
            run_invert_s(csv, bmax, cells, out, verify);
        } else if (*inva) {
            run_invert_absf(csv, beta_max, bmax, cells, out);
        } else if (*demo) {
            run_demo(demo_name, out.empty() ? demo_name : out);
        }
    } catch (const InvalidInput& e) {
        std::fprintf(stderr, "invalid input: %s\n", e.what());
        return 1;
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 2;
    } catch (const VerificationError& e) {
        std::fprintf(stderr, "verification failed: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 2;
    }
    return 0;
}
