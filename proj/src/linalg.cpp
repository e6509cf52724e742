#include "miembed/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace miembed {

namespace {

double off_diagonal_norm(const SquareMatrix& a) {
    double s = 0.0;
    for (std::size_t r = 0; r < a.size(); ++r)
        for (std::size_t c = r + 1; c < a.size(); ++c) s += a(r, c) * a(r, c);
    return std::sqrt(2.0 * s);
}

double frobenius(const SquareMatrix& a) {
    double s = 0.0;
    for (std::size_t r = 0; r < a.size(); ++r)
        for (std::size_t c = 0; c < a.size(); ++c) s += a(r, c) * a(r, c);
    return std::sqrt(s);
}

}  // namespace

SymmetricEigen symmetric_eigen(SquareMatrix a, double tolerance, int max_sweeps) {
    const std::size_t n = a.size();
    SquareMatrix v(n);
    for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

    const double scale = frobenius(a);
    int sweep = 0;
    while (scale > 0.0 && off_diagonal_norm(a) > tolerance * scale) {
        if (++sweep > max_sweeps) throw std::runtime_error("Jacobi eigen-solver did not converge");
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    SymmetricEigen out;
    for (auto k : order) {
        out.values.push_back(a(k, k));
        std::vector<double> col(n);
        for (std::size_t r = 0; r < n; ++r) col[r] = v(r, k);
        out.vectors.push_back(std::move(col));
    }
    return out;
}

}  // namespace miembed
