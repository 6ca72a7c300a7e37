#pragma once

namespace orthograph {

/// Numerical thresholds shared by every module. All are relative unless noted.
struct Tolerances {
  double proj = 1e-9;  ///< projection defect: |p - p*|, |p^2 - p|
  double vec = 1e-9;   ///< unit-vector defect
  double eig = 1e-8;   ///< clustering of the top eigenvalue (norm-attaining subspace)
  double ker = 1e-8;   ///< kernel threshold relative to the norm
  double orth = 1e-7;  ///< orthogonality decision threshold

  /// Margins with magnitude at or below this are reported as indeterminate.
  double tie_band() const noexcept { return 2.0 * orth; }

  /// Throws ConfigError unless every field is strictly positive and finite.
  void validate() const;
};

}  // namespace orthograph
