// Acceptance run: one PASS/FAIL line per criterion, with its runtime limit.
// Exit status is nonzero if any criterion fails.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "orthograph/orthogonality.hpp"
#include "orthograph/pathfinder.hpp"
#include "orthograph/verify.hpp"

using namespace orthograph;

namespace {

struct Criterion {
  std::string name;
  double limit_seconds;
  std::function<bool(std::vector<std::string>&)> body;
};

bool suites_ok(const std::vector<SuiteResult>& rs, std::vector<std::string>& detail) {
  bool ok = true;
  for (const SuiteResult& r : rs) {
    ok = ok && r.ok();
    detail.push_back(format_suite(r));
  }
  return ok;
}

Matrix unit(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  Matrix m = Matrix::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

bool asymmetric_regression(std::vector<std::string>& detail) {
  const Tolerances tol;
  const Element one = Element::identity(AlgebraShape{2});
  const Element e11 = Element::from_matrix(unit(2, 0, 0));
  const OrthDecision fwd = strong_bj(one, e11, tol);
  const OrthDecision bwd = strong_bj(e11, one, tol);
  const Element x(AlgebraShape{2, 2}, {Matrix::Identity(2, 2), unit(2, 0, 0)});
  const Element y(AlgebraShape{2, 2}, {unit(2, 0, 0), Matrix::Identity(2, 2)});
  const MutualDecision m = mutual_strong(x, y, tol);
  std::ostringstream os;
  os << "I ⊥s E11: " << fwd.verdict << " (margin " << fwd.margin << "), E11 ⊥s I: " << bwd.verdict << " (margin "
     << bwd.margin << "), (I,E11) vs (E11,I): (" << m.forward.verdict << ", " << m.backward.verdict << ")";
  detail.push_back(os.str());
  const bool decisive = !fwd.indeterminate(tol) && !bwd.indeterminate(tol) && !m.forward.indeterminate(tol) &&
                        !m.backward.indeterminate(tol);
  return decisive && fwd.verdict && !bwd.verdict && m.forward.verdict && m.backward.verdict;
}

bool oracle_consistency(std::vector<std::string>& detail) {
  const Tolerances tol;
  std::vector<SuiteResult> rs;
  std::uint64_t seed = 101;
  bool band_ok = true;
  for (const AlgebraShape& s : {AlgebraShape{2}, AlgebraShape{3}, AlgebraShape{2, 2}}) {
    rs.push_back(check_oracle_consistency(s, 500, seed++, tol, 200, 50));
    band_ok = band_ok && rs.back().indeterminate_rate() < 0.02;
  }
  return suites_ok(rs, detail) && band_ok;
}

bool isolated_vertices(std::vector<std::string>& detail) {
  const Tolerances tol;
  std::vector<SuiteResult> rs;
  std::uint64_t seed = 201;
  for (const AlgebraShape& s : {AlgebraShape{2}, AlgebraShape{3}, AlgebraShape{4}, AlgebraShape{2, 2}, AlgebraShape{2, 3}}) {
    rs.push_back(check_isolation(s, 200, seed++, tol));
  }
  return suites_ok(rs, detail);
}

bool diameter_bound(std::vector<std::string>& detail) {
  const Tolerances tol;
  std::vector<SuiteResult> rs;
  std::uint64_t seed = 301;
  for (const AlgebraShape& s :
       {AlgebraShape{3}, AlgebraShape{4}, AlgebraShape{5}, AlgebraShape{2, 3}, AlgebraShape{3, 3}}) {
    rs.push_back(check_path_lengths(s, 100, seed++, tol, 4));
  }
  return suites_ok(rs, detail);
}

bool direct_sum_bound(std::vector<std::string>& detail) {
  return suites_ok({check_direct_sum_paths(100, 401, Tolerances{})}, detail);
}

bool two_summand_bound(std::vector<std::string>& detail) {
  return suites_ok({check_path_lengths(AlgebraShape{4, 5}, 100, 501, Tolerances{}, 3)}, detail);
}

bool small_algebras(std::vector<std::string>& detail) {
  const Tolerances tol;
  return suites_ok({check_small_algebra_errors(601, tol), check_m2_neighbourhoods(50, 1000, 602, tol)}, detail);
}

bool property_suites(std::vector<std::string>& detail) {
  const Tolerances tol;
  return suites_ok({check_modulus_equivalence(500, 701, tol), check_ambient_invariance(500, 702, tol),
                    check_scalar_invariance(500, 703, tol), check_witness_soundness(500, 704, tol),
                    check_state_projection(500, 705, tol), check_top_projection_bound(500, 706, tol),
                    check_join_orthogonality(500, 707, tol), check_rank_one_join(500, 708, tol)},
                   detail);
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"asymmetric strong orthogonality of (I2, E11) and mutual orthogonality in M2+M2", 1.0, asymmetric_regression},
      {"decision agrees with grid search on 500 pairs in M2, M3, M2+M2; tie band < 2%", 120.0, oracle_consistency},
      {"full rank elements isolated, rank deficient ones have verified neighbours (200 each)", 60.0, isolated_vertices},
      {"paths of length <= 4 in M3, M4, M5, M2+M3, M3+M3 (100 pairs each)", 180.0, diameter_bound},
      {"cross-deficient pairs in M2+M2 joined in <= 3 steps, degenerate pairs in 1 (100 pairs)", 60.0, direct_sum_bound},
      {"paths of length <= 3 in M4+M5 (100 pairs)", 120.0, two_summand_bound},
      {"small algebras refused; M2 rank-one neighbourhoods form one class (50 x 1000)", 120.0, small_algebras},
      {"property suites, 500 samples each", 180.0, property_suites},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Criterion& c = criteria[i];
    std::vector<std::string> detail;
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.body(detail);
    } catch (const std::exception& e) {
      detail.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_seconds;
    if (!in_time) detail.push_back("over the time limit");
    const bool pass = ok && in_time;
    failures += pass ? 0 : 1;
    std::cout << (pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << c.name << " (" << std::fixed
              << std::setprecision(2) << secs << " s, limit " << std::setprecision(0) << c.limit_seconds << " s)"
              << std::defaultfloat << std::setprecision(6) << "\n";
    for (const std::string& d : detail) std::cout << "    " << d << "\n";
    std::cout.flush();
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
