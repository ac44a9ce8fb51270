#pragma once

#include <vector>

#include <Eigen/Dense>

#include "cvent/fock.hpp"
#include "cvent/gaussian.hpp"

namespace cvent::bounds {

struct ExtractionResult {
  double estimate_nats = 0.0;
  double weight = 0.0;  // weight of the extracted pure state
  double x_arg = 0.0;
  double y_arg = 0.0;
};

// Closed-form estimate as printed; |T_i| are magnitudes.
ExtractionResult extraction_estimate(double q_mag, double t1_mag, double t2_mag);

struct DirectExtraction {
  double weight = 0.0;
  double entropy_nats = 0.0;
  double estimate() const { return weight * entropy_nats; }
};

// Builds the extracted pure state component by component and returns its
// weight and Schmidt entropy.
DirectExtraction extracted_state_direct(const TmsvParams& params, const ChannelPair& ch, int n_max = 30);

struct SchmidtBlock {
  int offset = 0;           // n1 - n2 within the block
  double weight = 0.0;      // block trace
  Eigen::MatrixXcd state;   // normalized block, basis |k + offset, k> (offset >= 0) or |k, k - offset>
  double entanglement = 0.0;
};

struct SchmidtBlockDecomposition {
  std::vector<SchmidtBlock> blocks;
  double total_weight() const;
  double bound() const;
};

SchmidtBlockDecomposition schmidt_blocks(const fock::FockDensityMatrix& rho);

double schmidt_block_bound(const fock::FockDensityMatrix& rho);

}  // namespace cvent::bounds
