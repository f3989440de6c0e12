#pragma once

#include <array>
#include <complex>
#include <functional>
#include <type_traits>

namespace fdcheck {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;

// Sixth-order central difference of a complex- or array-valued function along axis j.
template <class F, class P>
auto diff6(const F& f, P x, int j, double h) {
    auto at = [&](double s) {
        P y = x;
        y[j] += s * h;
        return f(y);
    };
    auto a1 = at(1), b1 = at(-1), a2 = at(2), b2 = at(-2), a3 = at(3), b3 = at(-3);
    using T = decltype(a1);
    T out{};
    if constexpr (std::is_same_v<T, cplx>) {
        out = (45.0 * (a1 - b1) - 9.0 * (a2 - b2) + (a3 - b3)) / (60.0 * h);
    } else {
        for (size_t i = 0; i < out.size(); ++i)
            out[i] = (45.0 * (a1[i] - b1[i]) - 9.0 * (a2[i] - b2[i]) + (a3[i] - b3[i])) / (60.0 * h);
    }
    return out;
}

}  // namespace fdcheck
