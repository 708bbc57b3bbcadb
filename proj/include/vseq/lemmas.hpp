#ifndef VSEQ_LEMMAS_HPP
#define VSEQ_LEMMAS_HPP

#include "vseq/cech.hpp"

namespace vseq {

struct VerifierOptions {
    AnsatzSpec ansatz;
    int quad_nodes = 64;
    double tolerance = 1e-8;
};

/// Naturality of the variational Lie derivative across a cover, with the
/// triviality of the derived class witnessed by periods. Runs the current
/// half when the cochain is variationally trivial, the Lagrangian half
/// otherwise.
Report verify_lemma1(const Cover& K, const Cochain<Lagrangian>& lambdas, const VectorField& v,
                     const VerifierOptions& opt = {});

/// Second-derivative hypothesis and the overlap identity
/// L_Xi d_H gamma_ij = (coboundary of d_H beta_i) with beta_i = nu_i + eps_i.
Report verify_lemma2(const Cover& K, const Cochain<Lagrangian>& lambdas, const VectorField& v,
                     const VerifierOptions& opt = {});

/// Conservation of the varied strong Noether currents: on-shell divergence
/// per chart, globality of the varied cochain, and variational equivalence
/// with the contracted global representative.
Report verify_lemma3(const Cover& K, const Cochain<Lagrangian>& lambdas, const VectorField& v,
                     const VerifierOptions& opt = {});

} // namespace vseq

#endif
