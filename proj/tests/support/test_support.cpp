#include "test_support.hpp"

#include <stdexcept>

namespace intprior::testing {

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n % 2 != 0) throw std::invalid_argument("simpson: n must be even");
    const double h = (b - a) / n;
    double sum = f(a) + f(b);
    for (int i = 1; i < n; ++i) {
        sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    return sum * h / 3.0;
}

}  // namespace intprior::testing
