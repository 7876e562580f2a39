#include "sndg/rational.hpp"

#include "sndg/errors.hpp"

#include <cctype>

namespace sndg {

Rational harmonic(int j) {
    if (j < 0) throw ArgumentError("harmonic: j must be >= 0");
    Rational h = 0;
    for (int i = 1; i <= j; ++i) h += Rational(1, i);
    return h;
}

std::string rational_str(const Rational& q) {
    if (rational_den(q) == 1) return rational_num(q).str();
    return rational_num(q).str() + "/" + rational_den(q).str();
}

bool try_parse_rational(std::string_view text, Rational& out) {
    if (text.empty()) return false;
    auto is_int = [](std::string_view s) {
        if (!s.empty() && (s[0] == '+' || s[0] == '-')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };
    auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) {
            if (!is_int(text)) return false;
            out = Rational(BigInt(std::string(text)));
            return true;
        }
        std::string_view num = text.substr(0, slash);
        std::string_view den = text.substr(slash + 1);
        if (!is_int(num) || !is_int(den)) return false;
        BigInt d{std::string(den)};
        if (d == 0) return false;
        out = Rational(BigInt(std::string(num)), d);
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

std::string decimal_str(const Rational& q, int significant_digits) {
    if (significant_digits < 1) significant_digits = 1;
    if (q == 0) return "0";
    const bool negative = q < 0;
    BigInt num = abs(rational_num(q));
    BigInt den = rational_den(q);

    // Find the decimal exponent: the largest e with 10^e <= num/den.
    int exponent = 0;
    BigInt scaled_num = num;
    BigInt scaled_den = den;
    while (scaled_num < scaled_den) {
        scaled_num *= 10;
        --exponent;
    }
    while (scaled_num >= scaled_den * 10) {
        scaled_den *= 10;
        ++exponent;
    }

    // Produce significant_digits digits, then round half away from zero.
    std::string digits;
    BigInt rem = scaled_num;
    for (int i = 0; i < significant_digits; ++i) {
        BigInt d = rem / scaled_den;
        digits.push_back(static_cast<char>('0' + static_cast<int>(d)));
        rem = (rem - d * scaled_den) * 10;
    }
    if (rem * 2 >= scaled_den * 10) {
        int i = static_cast<int>(digits.size()) - 1;
        while (i >= 0) {
            if (digits[i] != '9') {
                ++digits[i];
                break;
            }
            digits[i] = '0';
            --i;
        }
        if (i < 0) {
            digits.insert(digits.begin(), '1');
            digits.pop_back();
            ++exponent;
        }
    }

    // Trim trailing zeros (keeping at least one digit).
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();

    std::string body;
    if (exponent >= 0 && exponent < 15) {
        if (static_cast<int>(digits.size()) <= exponent + 1) {
            body = digits + std::string(exponent + 1 - digits.size(), '0');
        } else {
            body = digits.substr(0, exponent + 1) + "." + digits.substr(exponent + 1);
        }
    } else if (exponent < 0 && exponent > -6) {
        body = "0." + std::string(-exponent - 1, '0') + digits;
    } else {
        body = digits.substr(0, 1);
        if (digits.size() > 1) body += "." + digits.substr(1);
        body += "e" + std::to_string(exponent);
    }
    return negative ? "-" + body : body;
}

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::argument: return "argument";
        case ErrorKind::parse: return "parse";
        case ErrorKind::validation: return "validation";
        case ErrorKind::explosion: return "explosion";
        case ErrorKind::budget: return "budget";
        case ErrorKind::no_path: return "no-path";
        case ErrorKind::structure: return "structure";
        case ErrorKind::precondition: return "precondition";
        case ErrorKind::degenerate: return "degenerate";
        case ErrorKind::reconstruction: return "reconstruction";
        case ErrorKind::internal: return "internal";
    }
    return "unknown";
}

}  // namespace sndg
