// Quantized barycenters of the F1 polygon, from counts to the stability threshold.

#include <iostream>

#include "qbary/qbary.hpp"

using namespace qbary;

int main()
{
    ToricData t({{1, 0}, {0, 1}, {-1, -1}, {1, 1}}, {1, 1, 1, 1});
    const Polytope& p = t.polytope();

    std::cout << "vertices:";
    for (const auto& v : p.vertices())
        std::cout << " " << to_string(v);
    std::cout << "\nEhrhart polynomial: " << ehrhart_polynomial(p).poly << "\n";

    BarycenterFunction bf = barycenter_function(p);
    std::cout << "Bc_k, first coordinate: (" << bf.numerator(0) << ") / (" << bf.denominator() << ")\n";
    for (std::int64_t k = 1; k <= 3; ++k)
        std::cout << "Bc_" << k << " = " << to_string(quantized_barycenter(p, k)) << "\n";

    auto a = asymptotic_coefficients(bf, p, 3);
    for (std::size_t j = 0; j < a.size(); ++j)
        std::cout << "a_" << j << " = " << to_string(a[j]) << "\n";

    for (std::int64_t k = 1; k <= 3; ++k)
        std::cout << "delta_" << k << " = " << to_string(delta_k(t, k).value) << "\n";
    std::cout << "delta = " << to_string(delta(t).value) << "\n";
}
