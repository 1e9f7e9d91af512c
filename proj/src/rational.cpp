#include "germstab/rational.hpp"

#include "germstab/errors.hpp"

#include <cctype>
#include <cstddef>

namespace germstab {

Rat make_rat(long num, long den) {
    if (den == 0)
        throw argument_error("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

std::optional<Rat> parse_rat(const std::string& text) {
    // Exact literal grammar: [+-]digits or [+-]digits/digits.
    std::string s = text;
    if (!s.empty() && s[0] == '+')
        s.erase(0, 1);
    if (s.empty())
        return std::nullopt;
    std::size_t i = (s[0] == '-') ? 1 : 0;
    auto scan_digits = [&](std::size_t from) {
        std::size_t j = from;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
            ++j;
        return j;
    };
    std::size_t end_num = scan_digits(i);
    if (end_num == i)
        return std::nullopt;
    if (end_num != s.size()) {
        if (s[end_num] != '/')
            return std::nullopt;
        std::size_t den_start = end_num + 1;
        std::size_t end_den = scan_digits(den_start);
        if (end_den != s.size() || end_den == den_start)
            return std::nullopt;
        if (mpz_class(s.substr(den_start), 10) == 0)
            return std::nullopt;
    }
    Rat q(s, 10);
    q.canonicalize();
    return q;
}

std::string rat_str(const Rat& q) {
    return q.get_str();
}

}  // namespace germstab
