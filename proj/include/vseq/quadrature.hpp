#ifndef VSEQ_QUADRATURE_HPP
#define VSEQ_QUADRATURE_HPP

#include <vector>

namespace vseq {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule on [0,1].
QuadratureRule gauss_legendre_01(int points);

} // namespace vseq

#endif
