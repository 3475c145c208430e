#pragma once

#include <string>

#include <json.hpp>

#include "padicq/adelic.hpp"
#include "padicq/gaussian.hpp"
#include "padicq/log_ledger.hpp"
#include "padicq/weyl_oracle.hpp"

namespace padicq::report {

using Json = nlohmann::ordered_json;

/// Rendering base for logarithms: "e", "2" or "10".
struct LogBase {
    std::string label = "e";
};

/// Exponent map keyed by decimal prime, primes ascending.
Json exponents(const LogLedger& ledger);
Json ledger(const LogLedger& ledger, const LogBase& base);
Json lattice(const Lattice& l);
Json state(const GaussianState& s, const LogBase& base);
/// {"det", "primes", "real", "sum_is_zero"}.
Json adelic(const AdelicGainReport& r);
Json scan_case(const oracle::ChannelScanCase& c);

}  // namespace padicq::report
