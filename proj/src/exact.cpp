#include "epsfree/exact.hpp"

#include "epsfree/error.hpp"

namespace epsfree {

std::string to_string(const Rational& value) {
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
    if (text.empty()) throw ValidationError("empty rational literal");
    const std::string str(text);
    const auto slash = str.find('/');
    auto valid_integer = [](const std::string& s) {
        std::size_t i = (s.size() > 0 && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    std::string num = slash == std::string::npos ? str : str.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : str.substr(slash + 1);
    if (!valid_integer(num) || !valid_integer(den) || den[0] == '-' || den[0] == '+')
        throw ValidationError("malformed rational literal '" + str + "'");
    if (num[0] == '+') num.erase(0, 1);
    mpz_class d(den);
    if (d == 0) throw ValidationError("zero denominator in '" + str + "'");
    Rational r(mpz_class(num), d);
    r.canonicalize();
    return r;
}

mpz_class integer_power(std::int64_t base, int exponent) {
    if (exponent < 0) throw ValidationError("integer_power: negative exponent");
    mpz_class b(static_cast<long>(base));
    mpz_class out;
    mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(exponent));
    return out;
}

Rational rational_power(std::int64_t base, int exponent) {
    if (exponent >= 0) return Rational(integer_power(base, exponent));
    if (base == 0) throw ValidationError("rational_power: zero to a negative power");
    Rational r(mpz_class(1), integer_power(base, -exponent));
    r.canonicalize();
    return r;
}

std::vector<Rational> exact_solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw ValidationError("exact_solve: dimension mismatch");
    for (const auto& row : a)
        if (row.size() != n) throw ValidationError("exact_solve: matrix must be square");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && sgn(a[pivot][col]) == 0) ++pivot;
        if (pivot == n) throw ValidationError("exact_solve: singular matrix");
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        const Rational inv = 1 / a[col][col];
        for (std::size_t j = col; j < n; ++j) a[col][j] *= inv;
        b[col] *= inv;
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || sgn(a[row][col]) == 0) continue;
            const Rational factor = a[row][col];
            for (std::size_t j = col; j < n; ++j) a[row][j] -= factor * a[col][j];
            b[row] -= factor * b[col];
        }
    }
    return b;
}

std::vector<std::vector<Rational>> exact_inverse(std::vector<std::vector<Rational>> a) {
    const std::size_t n = a.size();
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) throw ValidationError("exact_inverse: matrix must be square");
        inv[i][i] = 1;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && sgn(a[pivot][col]) == 0) ++pivot;
        if (pivot == n) throw ValidationError("exact_inverse: singular matrix");
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        const Rational scale = 1 / a[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] *= scale;
            inv[col][j] *= scale;
        }
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || sgn(a[row][col]) == 0) continue;
            const Rational factor = a[row][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[row][j] -= factor * a[col][j];
                inv[row][j] -= factor * inv[col][j];
            }
        }
    }
    return inv;
}

}  // namespace epsfree
