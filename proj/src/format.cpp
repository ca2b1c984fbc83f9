#include "arbor/format.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace arbor {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) x = 0.0;  // drop the sign of -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_complex(Complex z) {
    if (z.imag() == 0.0) return format_double(z.real());
    std::string im = format_double(z.imag()) + "i";
    if (z.real() == 0.0) return im;
    if (im.front() != '-') im.insert(im.begin(), '+');
    return format_double(z.real()) + im;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

double parse_real(std::string_view s, std::string_view whole) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double x = 0.0;
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, x);
    if (s.empty() || ec != std::errc{} || ptr != end) {
        throw std::invalid_argument("cannot parse number '" + std::string(whole) + "'");
    }
    return x;
}

// "i", "+i", "-i", "2i", "-0.5i"
double parse_imag(std::string_view s, std::string_view whole) {
    s.remove_suffix(1);  // the 'i'
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s, whole);
}

}  // namespace

Complex parse_complex(std::string_view text) {
    const std::string_view s = trim(text);
    if (s.empty()) throw std::invalid_argument("empty number");
    if (s.back() != 'i') return {parse_real(s, text), 0.0};

    // Find the sign that separates real and imaginary parts: the last '+' or
    // '-' that is not at position 0 and not part of an exponent.
    std::size_t split = std::string_view::npos;
    for (std::size_t k = s.size() - 1; k > 0; --k) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string_view::npos) return {0.0, parse_imag(s, text)};
    return {parse_real(s.substr(0, split), text), parse_imag(s.substr(split), text)};
}

}  // namespace arbor
