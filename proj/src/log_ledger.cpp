#include "padicq/log_ledger.hpp"

#include <cmath>

#include "padicq/errors.hpp"

namespace padicq {

LogLedger LogLedger::single(const Integer& prime, long exponent) {
    LogLedger l;
    l.add(prime, exponent);
    return l;
}

LogLedger LogLedger::of_prime_power(const Rational& x, const Prime& p) {
    if (x == 0) throw DomainError("log of zero");
    Integer num_rest, den_rest;
    long up = remove_factor(abs(x.get_num()), p.value(), &num_rest);
    long down = remove_factor(x.get_den(), p.value(), &den_rest);
    if (num_rest != 1 || den_rest != 1)
        throw DomainError(to_string(x) + " is not a power of " + p.value().get_str());
    return single(p.value(), up - down);
}

long LogLedger::exponent(const Integer& prime) const {
    auto it = terms_.find(prime);
    return it == terms_.end() ? 0 : it->second;
}

void LogLedger::add(const Integer& prime, long exponent) {
    if (exponent == 0) return;
    auto [it, inserted] = terms_.try_emplace(prime, exponent);
    if (!inserted) {
        it->second += exponent;
        if (it->second == 0) terms_.erase(it);
    }
}

LogLedger& LogLedger::operator+=(const LogLedger& other) {
    for (const auto& [q, e] : other.terms_) add(q, e);
    return *this;
}

LogLedger& LogLedger::operator-=(const LogLedger& other) {
    for (const auto& [q, e] : other.terms_) add(q, -e);
    return *this;
}

double LogLedger::value(double base) const {
    double nats = 0.0;
    for (const auto& [q, e] : terms_) nats += static_cast<double>(e) * std::log(q.get_d());
    return base > 0.0 ? nats / std::log(base) : nats;
}

std::string LogLedger::render(const std::string& base_label) const {
    if (terms_.empty()) return "0";
    const std::string fn = base_label == "e" ? "ln" : "log" + base_label;
    std::string out;
    for (const auto& [q, e] : terms_) {
        if (!out.empty()) out += e < 0 ? " - " : " + ";
        long shown = out.empty() ? e : std::labs(e);
        out += std::to_string(shown) + "·" + fn + " " + q.get_str();
    }
    return out;
}

}  // namespace padicq
