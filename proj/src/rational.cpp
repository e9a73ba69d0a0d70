#include "rosetree/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace rosetree {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Rat parse_unsigned_decimal(const std::string& text) {
    // forms: digits, digits.digits, with optional e<exp> handled by caller
    auto dot = text.find('.');
    if (dot == std::string::npos) {
        if (!all_digits(text)) throw parse_error("bad rational: " + text);
        return Rat(BigInt(text));
    }
    std::string ip = text.substr(0, dot), fp = text.substr(dot + 1);
    if (ip.empty()) ip = "0";
    if (!all_digits(ip) || (!fp.empty() && !all_digits(fp)))
        throw parse_error("bad rational: " + text);
    Rat r{BigInt(ip)};
    if (!fp.empty()) r += Rat(BigInt(fp), pow_int(10, static_cast<unsigned>(fp.size())));
    return r;
}

} // namespace

Rat rat_parse(const std::string& text) {
    if (text.empty()) throw parse_error("empty rational");
    std::string s = text;
    bool neg = false;
    if (s[0] == '+' || s[0] == '-') {
        neg = (s[0] == '-');
        s = s.substr(1);
    }
    if (s.empty()) throw parse_error("bad rational: " + text);

    Rat r;
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) throw parse_error("bad rational: " + text);
        BigInt d(den);
        if (d == 0) throw parse_error("zero denominator: " + text);
        r = Rat(BigInt(num), d);
    } else {
        auto e = s.find_first_of("eE");
        if (e != std::string::npos) {
            std::string mant = s.substr(0, e), exp = s.substr(e + 1);
            bool eneg = false;
            if (!exp.empty() && (exp[0] == '+' || exp[0] == '-')) {
                eneg = (exp[0] == '-');
                exp = exp.substr(1);
            }
            if (!all_digits(exp)) throw parse_error("bad rational: " + text);
            r = parse_unsigned_decimal(mant);
            unsigned k = static_cast<unsigned>(std::strtoul(exp.c_str(), nullptr, 10));
            Rat scale(pow_int(10, k));
            r = eneg ? Rat(r / scale) : Rat(r * scale);
        } else {
            r = parse_unsigned_decimal(s);
        }
    }
    return neg ? Rat(-r) : r;
}

} // namespace rosetree
