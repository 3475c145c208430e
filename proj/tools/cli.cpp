#include "padicq/cli.hpp"

#include <algorithm>
#include <functional>
#include <iostream>

#include <CLI11.hpp>

#include "padicq/adelic.hpp"
#include "padicq/errors.hpp"
#include "padicq/gaussian.hpp"
#include "padicq/report.hpp"
#include "padicq/weyl_oracle.hpp"

namespace padicq::cli {

namespace {

using report::Json;

struct Config {
    std::string format = "json";
    std::string base = "e";
    std::uint64_t seed = 0;
};

struct LatticeArgs {
    std::string action;
    long p = 0;
    std::string basis, a, b;
};

struct ChannelArgs {
    std::string action;
    long p = 0;
    std::string k, l = "1,0;0,1", state, shift = "0,0";
    long n = -1;
};

struct OracleArgs {
    long p = 3;
    int n = 2;
    std::size_t max_cases = 64;
};

/// Signals a completed run whose checks failed; maps to exit code 2.
struct ChecksFailed {
    Json report;
};

Lattice lattice_arg(const std::string& text, long p, const char* flag) {
    if (text.empty()) throw InputError(std::string("missing ") + flag);
    return Lattice(parse_mat2(text), Prime(p));
}

Json lattice_command(const LatticeArgs& args, const report::LogBase&) {
    const std::string& act = args.action;
    if (act == "intersect" || act == "sum") {
        Lattice la = lattice_arg(args.a, args.p, "--a");
        Lattice lb = lattice_arg(args.b, args.p, "--b");
        return report::lattice(act == "sum" ? lattice_sum(la, lb) : intersect(la, lb));
    }
    Lattice l = lattice_arg(args.basis, args.p, "--basis");
    if (act == "measure") return Json{{"measure", to_string(l.measure())}};
    if (act == "canon") return Json{{"canonical", to_string(l.canonical())}};
    if (act == "selfdual") return Json{{"self_dual", is_self_dual(l)}, {"measure", to_string(l.measure())}};
    Json out = report::lattice(dual(l));
    out["self_dual"] = is_self_dual(l);
    return out;
}

Json channel_command(const ChannelArgs& args, const report::LogBase& base) {
    if (args.k.empty()) throw InputError("missing --K");
    const Prime p(args.p);
    const Mat2 k = parse_mat2(args.k);
    const Lattice noise(parse_mat2(args.l), p);
    if (args.action == "validate") {
        if (k.det() == 0) throw InputError("singular channel matrix " + to_string(k));
        return Json{{"valid", satisfies_channel_inequality(k, noise)},
                    {"det", to_string(k.det())},
                    {"lhs", to_string(norm_p(1 - k.det(), p) * noise.measure())}};
    }
    const GaussianChannel phi(k, noise);
    if (args.action == "gain") {
        LogLedger g = gain_theorem(phi);
        return Json{{"exponent", g.exponent(p.value())},
                    {"prime", p.value().get_si()},
                    {"value_base_" + base.label, g.render(base.label)},
                    {"identity_norm", to_string(phi_identity_norm(phi))}};
    }
    if (args.action == "threshold") return Json{{"threshold", find_threshold(phi)}};
    if (args.action == "witness") {
        long n = args.n >= 0 ? args.n : find_threshold(phi);
        LogLedger w = gain_witness(phi, n);
        LogLedger t = gain_theorem(phi);
        return Json{{"n", n},
                    {"witness", report::ledger(w, base)},
                    {"theorem", report::ledger(t, base)},
                    {"equal", w == t}};
    }
    // apply
    if (args.state.empty()) throw InputError("missing --state");
    GaussianState in(Lattice(parse_mat2(args.state), p), parse_vec2(args.shift));
    GaussianState out = apply_channel(phi, in);
    return Json{{"input", report::state(in, base)},
                {"output", report::state(out, base)},
                {"entropy_change", report::ledger(entropy(out) - entropy(in), base)}};
}

Json adelic_command(const std::string& k) {
    if (k.empty()) throw InputError("missing --K");
    AdelicGainReport r = adelic_report(parse_mat2(k));
    if (!r.sum_is_zero) throw ChecksFailed{report::adelic(r)};
    return report::adelic(r);
}

Json oracle_command(const OracleArgs& args, std::uint64_t seed) {
    using namespace oracle;
    const WeylSystem sys(args.p, args.n);
    const Prime p(args.p);
    bool all_pass = true;

    CcrReport ccr = ccr_check(sys, 81, 500, seed);
    bool ccr_ok = ccr.max_deviation < kAlgebraicTol;
    all_pass = all_pass && ccr_ok;

    Json states = Json::array();
    const int m = sys.window();
    for (int alpha = -m; alpha <= m; ++alpha) {
        for (int beta = -m; beta <= m; ++beta) {
            if (alpha + beta < 0) continue;
            DensityMatrix rho = gaussian_density(sys, alpha, beta);
            const auto eig = spectrum(rho.matrix());
            const int n = alpha + beta;
            const double expected = static_cast<double>(n) * std::log(static_cast<double>(args.p));
            const double h = entropy_of(rho);
            double char_dev = 0.0;
            const ProductSubgroup s = sys.window_subgroup(alpha, beta);
            for (const auto& z : sys.all_points()) {
                double ind = sys.in_subgroup(z, s) ? 1.0 : 0.0;
                char_dev = std::max(char_dev, std::abs(oracle_char_fn(sys, rho.matrix(), z) - Complex(ind)));
            }
            // Exact side: diag(p^alpha, p^beta) L0 as a Gaussian state.
            GaussianState exact(Lattice(Mat2::diag(prime_power(p, alpha), prime_power(p, beta)), p));
            bool ok = std::abs(h - expected) < kSpectralTol && char_dev < kAlgebraicTol &&
                      std::abs(entropy(exact).value() - h) < kSpectralTol && (n == 0) == is_pure(exact);
            all_pass = all_pass && ok;
            states.push_back(Json{{"params", {{"alpha", alpha}, {"beta", beta}}},
                                  {"trace", rho.matrix().trace().real()},
                                  {"min_eig", eig.front()},
                                  {"spectrum", eig},
                                  {"entropy_nats", h},
                                  {"expected_entropy_nats", expected},
                                  {"char_fn_deviation", char_dev},
                                  {"agree", ok}});
        }
    }

    Json fourier = Json::array();
    for (int e1 = 0; e1 <= sys.n(); ++e1) {
        for (int e2 = 0; e2 <= sys.n(); ++e2) {
            double dev = fourier_dual_check(sys, {e1, e2});
            all_pass = all_pass && dev < kAlgebraicTol;
            fourier.push_back(Json{{"e1", e1}, {"e2", e2}, {"deviation", dev}, {"agree", dev < kAlgebraicTol}});
        }
    }

    Json channels = Json::array();
    if (sys.dim() <= kMaxChoiDim) {
        auto grid = default_channel_grid(sys);
        if (grid.size() > args.max_cases) grid.resize(args.max_cases);
        for (const auto& c : channel_validity_scan(sys, grid)) {
            all_pass = all_pass && c.agree;
            channels.push_back(report::scan_case(c));
        }
    }

    Json out{{"params", {{"p", args.p}, {"N", args.n}, {"dim", sys.dim()}, {"max_cases", args.max_cases}}},
             {"ccr",
              {{"max_deviation", ccr.max_deviation},
               {"pairs_checked", ccr.pairs_checked},
               {"full_grid", ccr.full_grid},
               {"agree", ccr_ok}}},
             {"states", std::move(states)},
             {"fourier", std::move(fourier)},
             {"channels", std::move(channels)},
             {"all_pass", all_pass}};
    if (!all_pass) throw ChecksFailed{std::move(out)};
    return out;
}

void emit(const Json& j, const Config& cfg, std::ostream& out) {
    if (cfg.format == "text") {
        for (const auto& [key, value] : j.items())
            out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
        return;
    }
    out << j.dump(2) << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact p-adic lattice geometry, Gaussian channels and entropy-gain ledgers", "padicq"};
    app.require_subcommand(1);
    Config cfg;
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--base", cfg.base, "Log base used when rendering entropies")->check(CLI::IsMember({"e", "2", "10"}));
    app.add_option("--seed", cfg.seed, "Seed for sampled checks");

    LatticeArgs la;
    auto* lattice = app.add_subcommand("lattice", "Lattice geometry");
    lattice->add_option("action", la.action)->required()->check(
        CLI::IsMember({"measure", "dual", "selfdual", "canon", "intersect", "sum"}));
    lattice->add_option("--p", la.p, "Prime")->required();
    lattice->add_option("--basis", la.basis, "Basis matrix 'a,b;c,d' (columns generate)");
    lattice->add_option("--a", la.a, "First lattice basis");
    lattice->add_option("--b", la.b, "Second lattice basis");

    ChannelArgs ca;
    auto* channel = app.add_subcommand("channel", "Gaussian channels");
    channel->add_option("action", ca.action)->required()->check(
        CLI::IsMember({"validate", "apply", "gain", "threshold", "witness"}));
    channel->add_option("--p", ca.p, "Prime")->required();
    channel->add_option("--K", ca.k, "Channel matrix 'a,b;c,d'");
    channel->add_option("--L", ca.l, "Noise lattice basis")->capture_default_str();
    channel->add_option("--state", ca.state, "Input state lattice basis (apply)");
    channel->add_option("--shift", ca.shift, "Input state shift 'x,y' (apply)");
    channel->add_option("--n", ca.n, "Witness index (witness; default: threshold)");

    std::string adelic_k;
    auto* adelic = app.add_subcommand("adelic", "Entropy gains at every place");
    adelic->add_option("--K", adelic_k, "Rational matrix 'a,b;c,d'")->required();

    OracleArgs oa;
    auto* oracle_cmd = app.add_subcommand("oracle", "Finite Weyl-system cross-checks");
    oracle_cmd->add_option("--p", oa.p, "Odd prime");
    oracle_cmd->add_option("--N", oa.n, "Even exponent, dim = p^N");
    oracle_cmd->add_option("--max-cases", oa.max_cases, "Cap on channel scan cases");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    const report::LogBase base{cfg.base};
    try {
        Json result;
        if (lattice->parsed()) result = lattice_command(la, base);
        else if (channel->parsed()) result = channel_command(ca, base);
        else if (adelic->parsed()) result = adelic_command(adelic_k);
        else result = oracle_command(oa, cfg.seed);
        emit(result, cfg, out);
        return kExitOk;
    } catch (const ChecksFailed& f) {
        emit(f.report, cfg, out);
        err << "error: checks failed\n";
        return kExitInvariant;
    } catch (const InvariantViolation& e) {
        err << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::domain_error& e) {
        err << "domain error: " << e.what() << "\n";
        return kExitInput;
    }
}

}  // namespace padicq::cli
