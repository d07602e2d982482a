#ifndef VAL_SPARSIFY_HPP
#define VAL_SPARSIFY_HPP

#include "val/kernel.hpp"
#include "val/types.hpp"

namespace val {

/// Two readings of the sequential confidence score. With
/// s_l = K(l,:)K(:,l) and d_l = K(l,l)+mu, `paper` scores s_l^2/d_l and
/// `ted` scores s_l/d_l (the standard sequential transductive experimental
/// design form). The two can rank candidates differently, so experiments
/// should report which one was used.
enum class ScoreVariant { paper, ted };

ScoreVariant parse_variant(const std::string& name);
std::string variant_name(ScoreVariant v);

struct SparsifyParams {
  double mu = 0.1;
  double target_fraction = 0.5;
  ScoreVariant variant = ScoreVariant::paper;

  void validate() const {
    if (!(mu > 0)) throw ConfigError("sparsify mu must be > 0");
    if (!(target_fraction > 0) || target_fraction > 1)
      throw ConfigError("sparsify target_fraction must be in (0, 1]");
  }
};

/// Per-candidate confidence scores on the current (possibly deflated) Gram
/// matrix; entries listed in `excluded` get -infinity so they can never win
/// the argmax. Accumulation is a plain ascending loop, bit-reproducible
/// against a from-scratch rescoring oracle.
Vector confidence_scores(const KernelMatrix& K, double mu, ScoreVariant variant,
                         const SubsetIndices& excluded);

/// Rank-one downdate after selecting index `selected`:
///   K' = K - K(:,l) K(l,:) / (K(l,l) + mu)
/// Exactly symmetric; PSD is preserved up to eigenvalue tolerance.
KernelMatrix deflate(const KernelMatrix& K, int selected, double mu);

/// In-place version used by the selection loop.
void deflate_in_place(Matrix& K, int selected, double mu);

/// The sequential select-and-deflate loop: `count` rounds of "append the
/// unselected index with the highest current score (ties to the lowest
/// index), then deflate there". Consumes its copy of the Gram matrix.
SubsetIndices greedy_select(Matrix K, double mu, int count, ScoreVariant variant);

/// Global sparsification: kernel matrix over X, then the greedy loop for
/// floor(n * target_fraction) rounds.
SubsetIndices sparsify_halve(const Matrix& X, const KernelSpec& spec,
                             const SparsifyParams& params);

}  // namespace val

#endif  // VAL_SPARSIFY_HPP
