#include "padicq/report.hpp"

namespace padicq::report {

Json exponents(const LogLedger& ledger) {
    Json out = Json::object();
    for (const auto& [q, e] : ledger.terms()) out[q.get_str()] = e;
    return out;
}

Json ledger(const LogLedger& l, const LogBase& base) {
    return Json{{"terms", exponents(l)}, {"value_base_" + base.label, l.render(base.label)}};
}

Json lattice(const Lattice& l) {
    return Json{{"prime", l.prime().value().get_str()},
                {"canonical", to_string(l.canonical())},
                {"measure", to_string(l.measure())}};
}

Json state(const GaussianState& s, const LogBase& base) {
    Json out = lattice(s.lattice());
    out["shift"] = to_string(s.shift());
    out["pure"] = is_pure(s);
    out["entropy"] = ledger(entropy(s), base);
    return out;
}

Json adelic(const AdelicGainReport& r) {
    return Json{{"det", to_string(r.det)},
                {"primes", exponents(r.prime_gains)},
                {"real", exponents(r.real_gain)},
                {"sum_is_zero", r.sum_is_zero}};
}

Json scan_case(const oracle::ChannelScanCase& c) {
    Json inputs = Json::array();
    for (const auto& in : c.inputs) {
        inputs.push_back(Json{{"params", {{"alpha", in.alpha}, {"beta", in.beta}}},
                              {"trace", in.trace},
                              {"min_eig", in.min_eig},
                              {"spectrum", in.spectrum},
                              {"entropy_nats", in.entropy_nats ? Json(*in.entropy_nats) : Json(nullptr)}});
    }
    return Json{{"params", {{"K", to_string(c.k)}, {"noise", {c.noise_alpha, c.noise_beta}}}},
                {"choi_min_eig", c.choi_min_eig},
                {"inputs", std::move(inputs)},
                {"expected_predicate", c.expected_predicate},
                {"observed_valid", c.observed_valid},
                {"agree", c.agree}};
}

}  // namespace padicq::report
