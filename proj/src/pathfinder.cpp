#include "orthograph/pathfinder.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <map>

namespace orthograph {
namespace {

Vector lift_vector(const AlgebraShape& shape, std::size_t block, const Vector& v) {
  Vector out = Vector::Zero(static_cast<Eigen::Index>(shape.total_dim()));
  out.segment(static_cast<Eigen::Index>(shape.offset(block)), v.size()) = v;
  return out;
}

// Eigenvectors of a positive element, in assembled coordinates, whose
// eigenvalues satisfy `keep`.
template <class Pred>
std::vector<Vector> spectral_vectors(const Element& a, Pred keep) {
  std::vector<Vector> out;
  for (std::size_t i = 0; i < a.blocks().size(); ++i) {
    const Matrix basis = eigenspace(0.5 * (a.block(i) + a.block(i).adjoint()), keep);
    for (Eigen::Index c = 0; c < basis.cols(); ++c) out.push_back(lift_vector(a.shape(), i, basis.col(c)));
  }
  return out;
}

// Canonical rank-1 subprojection: first block with nonzero rank, canonical
// unit vector of that block's range.
Vector canonical_subvector(const Projection& p) {
  const auto ranks = p.block_ranks();
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (ranks[i] == 0) continue;
    const Matrix basis = eigenspace(0.5 * (p.element().block(i) + p.element().block(i).adjoint()),
                                    [](double ev) { return ev > 0.5; });
    return lift_vector(p.element().shape(), i, canonical_unit_vector(basis));
  }
  throw Error(ErrorKind::ZeroElement, "zero projection has no minimal subprojection");
}

Vector support_in_assembled(const Projection& p) {
  const auto [block, v] = p.support_vector();
  return lift_vector(p.element().shape(), block, v);
}

void require_nonzero(const Element& a, const char* what) {
  if (a.is_zero()) throw Error(ErrorKind::ZeroElement, what);
}

}  // namespace

std::optional<std::pair<std::size_t, Vector>> orthogonal_unit_vector(const AlgebraShape& shape,
                                                                     const std::vector<Vector>& constraints) {
  for (std::size_t i = 0; i < shape.block_count(); ++i) {
    const auto n = static_cast<Eigen::Index>(shape.block_dim(i));
    const auto off = static_cast<Eigen::Index>(shape.offset(i));
    std::vector<Vector> local;
    for (const Vector& c : constraints) {
      const Vector seg = c.segment(off, n);
      if (seg.norm() > 1e-12) local.push_back(seg);
    }
    Matrix complement;
    if (local.empty()) {
      complement = Matrix::Identity(n, n);
    } else {
      Matrix c(n, static_cast<Eigen::Index>(local.size()));
      for (std::size_t k = 0; k < local.size(); ++k) c.col(static_cast<Eigen::Index>(k)) = local[k];
      Eigen::JacobiSVD<Matrix> svd(c, Eigen::ComputeFullU);
      const auto& sv = svd.singularValues();
      Eigen::Index rank = 0;
      for (Eigen::Index k = 0; k < sv.size(); ++k) {
        if (sv(k) > 1e-10 * sv(0)) ++rank;
      }
      if (rank >= n) continue;
      complement = svd.matrixU().rightCols(n - rank);
    }
    return std::make_pair(i, canonical_unit_vector(complement));
  }
  return std::nullopt;
}

Projection projection_onto(const AlgebraShape& shape, const std::vector<Vector>& vectors) {
  const auto total = static_cast<Eigen::Index>(shape.total_dim());
  Matrix basis(total, 0);
  for (const Vector& v : vectors) {
    Vector w = v;
    for (Eigen::Index k = 0; k < basis.cols(); ++k) w -= basis.col(k).dot(w) * basis.col(k);
    for (Eigen::Index k = 0; k < basis.cols(); ++k) w -= basis.col(k).dot(w) * basis.col(k);
    const double len = w.norm();
    if (len <= 1e-10 * std::max(1.0, v.norm())) continue;
    basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
    basis.col(basis.cols() - 1) = w / len;
  }
  const Matrix full = basis * basis.adjoint();
  std::vector<Matrix> blocks;
  for (std::size_t i = 0; i < shape.block_count(); ++i) {
    const auto n = static_cast<Eigen::Index>(shape.block_dim(i));
    const auto off = static_cast<Eigen::Index>(shape.offset(i));
    blocks.push_back(full.block(off, off, n, n));
  }
  return Projection::from_element(Element(shape, std::move(blocks)));
}

Element non_isolated_witness(const Element& a, const Tolerances& tol) {
  require_nonzero(a, "the zero element is not a vertex");
  if (is_right_invertible(a, tol)) throw Error(ErrorKind::Isolated, "right invertible elements are isolated vertices");
  const Element unit = (1.0 / norm(a)) * a;
  const Element b = sqrt_psd(Element::identity(a.shape()) - unit * unit.adjoint());
  if (b.is_zero() || norm(b) <= tol.ker) throw Error(ErrorKind::VerificationFailed, "witness vanished");
  if (!mutual_strong(a, b, tol).adjacent()) {
    throw Error(ErrorKind::VerificationFailed, "witness failed mutual orthogonality");
  }
  return b;
}

Projection third_projection(const Projection& p, const Projection& q, const Tolerances& tol) {
  require_same_shape(p.element(), q.element());
  const AlgebraShape& shape = p.element().shape();
  if (shape.is_small()) throw Error(ErrorKind::SmallAlgebra, shape.to_string() + " has no third minimal projection");
  if (!p.minimal() || !q.minimal()) throw Error(ErrorKind::NotMinimal, "third projection needs rank-1 inputs");
  const auto found = orthogonal_unit_vector(shape, {support_in_assembled(p), support_in_assembled(q)});
  if (!found) throw Error(ErrorKind::VerificationFailed, "no block has room for a third projection");
  const Projection r = Projection::rank_one(shape, found->first, found->second);
  if (norm(r.element() * p.element()) > tol.orth || norm(r.element() * q.element()) > tol.orth) {
    throw Error(ErrorKind::VerificationFailed, "third projection is not orthogonal to its inputs");
  }
  return r;
}

std::optional<OrthPath> try_path(std::vector<Element> vertices, const Tolerances& tol) {
  OrthPath path;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    if (projective_equal(vertices[i], vertices[i + 1], tol)) return std::nullopt;
    MutualDecision d = mutual_strong(vertices[i], vertices[i + 1], tol);
    if (!d.adjacent()) return std::nullopt;
    path.edges.push_back(std::move(d));
  }
  path.vertices = std::move(vertices);
  return path;
}

bool path_is_valid(const OrthPath& path, const Tolerances& tol) {
  if (path.vertices.empty() || path.edges.size() != path.length()) return false;
  for (std::size_t i = 0; i < path.length(); ++i) {
    if (projective_equal(path.vertices[i], path.vertices[i + 1], tol)) return false;
    if (!mutual_strong(path.vertices[i], path.vertices[i + 1], tol).adjacent()) return false;
  }
  return true;
}

namespace {

// Memoized edge checks over a growing list of candidate vertices.
class EdgeCache {
 public:
  EdgeCache(std::vector<Element>& nodes, const Tolerances& tol) : nodes_(nodes), tol_(tol) {}

  bool same(int i, int j) {
    auto key = std::minmax(i, j);
    auto it = same_.find(key);
    if (it == same_.end()) it = same_.emplace(key, projective_equal(nodes_[i], nodes_[j], tol_)).first;
    return it->second;
  }

  const MutualDecision* edge(int i, int j) {
    auto key = std::make_pair(i, j);
    auto it = edges_.find(key);
    if (it == edges_.end()) {
      MutualDecision d = mutual_strong(nodes_[i], nodes_[j], tol_);
      std::optional<MutualDecision> value;
      if (d.adjacent()) value = std::move(d);
      it = edges_.emplace(key, std::move(value)).first;
    }
    return it->second ? &*it->second : nullptr;
  }

  // Collapses consecutive projectively equal vertices, then checks every edge.
  std::optional<OrthPath> chain(std::vector<int> idx) {
    std::vector<int> kept{idx.front()};
    for (std::size_t k = 1; k < idx.size(); ++k) {
      if (idx[k] < 0) return std::nullopt;
      if (same(kept.back(), idx[k])) {
        if (k + 1 == idx.size()) kept.back() = idx[k];  // keep the real endpoint
        continue;
      }
      kept.push_back(idx[k]);
    }
    OrthPath path;
    for (std::size_t k = 0; k + 1 < kept.size(); ++k) {
      const MutualDecision* d = edge(kept[k], kept[k + 1]);
      if (!d) return std::nullopt;
      path.edges.push_back(*d);
    }
    for (int i : kept) path.vertices.push_back(nodes_[i]);
    return path;
  }

 private:
  std::vector<Element>& nodes_;
  const Tolerances& tol_;
  std::map<std::pair<int, int>, bool> same_;
  std::map<std::pair<int, int>, std::optional<MutualDecision>> edges_;
};

}  // namespace

OrthPath connect(const Element& a, const Element& b, const Tolerances& tol) {
  require_same_shape(a, b);
  require_nonzero(a, "path endpoint is zero");
  require_nonzero(b, "path endpoint is zero");
  const AlgebraShape& shape = a.shape();
  if (shape.is_small()) throw Error(ErrorKind::SmallAlgebra, shape.to_string() + " is excluded from path construction");
  if (is_right_invertible(a, tol) || is_right_invertible(b, tol)) {
    throw Error(ErrorKind::RightInvertibleEndpoint, "right invertible endpoints are isolated");
  }
  if (projective_equal(a, b, tol)) return OrthPath{{a}, {}};

  const Element a_hat = (1.0 / norm(a)) * abs_star(a);
  const Element b_hat = (1.0 / norm(b)) * abs_star(b);
  const Vector ker_a = canonical_subvector(kernel_projection(a_hat, tol));
  const Vector ker_b = canonical_subvector(kernel_projection(b_hat, tol));
  const Vector top_a = support_in_assembled(top_minimal_projection(a_hat, tol));
  const Vector top_b = support_in_assembled(top_minimal_projection(b_hat, tol));

  std::vector<Element> nodes{a, b};
  auto add = [&](Element e) {
    nodes.push_back(std::move(e));
    return static_cast<int>(nodes.size()) - 1;
  };
  const int A = 0, B = 1;

  const double cut = tol.ker;
  std::vector<Vector> ranges = spectral_vectors(a_hat, [cut](double ev) { return ev > cut; });
  for (Vector& v : spectral_vectors(b_hat, [cut](double ev) { return ev > cut; })) ranges.push_back(std::move(v));
  int c0 = -1;
  if (auto w = orthogonal_unit_vector(shape, ranges)) c0 = add(Projection::rank_one(shape, w->first, w->second).element());

  const Projection pa = projection_onto(shape, {ker_a});
  const Projection pb = projection_onto(shape, {ker_b});
  const int qa = add(pa.element());
  const int qb = add(pb.element());
  const int r = add(third_projection(pa, pb, tol).element());

  int d1 = -1, d2 = -1;
  if (auto x = orthogonal_unit_vector(shape, {top_a, ker_b})) {
    const Vector xv = lift_vector(shape, x->first, x->second);
    if (auto y = orthogonal_unit_vector(shape, {top_b, ker_a, xv})) {
      d1 = add(projection_onto(shape, {ker_a, xv}).element());
      d2 = add(projection_onto(shape, {ker_b, lift_vector(shape, y->first, y->second)}).element());
    }
  }

  EdgeCache cache(nodes, tol);
  std::vector<std::vector<int>> candidates{{A, B}};
  for (int m : {c0, qa, r, qb, d1, d2}) {
    if (m >= 0) candidates.push_back({A, m, B});
  }
  for (auto [m1, m2] : {std::pair{qa, qb}, {d1, d2}, {qa, r}, {r, qb}, {qa, d2}, {d1, qb}}) {
    if (m1 >= 0 && m2 >= 0) candidates.push_back({A, m1, m2, B});
  }
  candidates.push_back({A, qa, r, qb, B});
  for (const auto& c : candidates) {
    if (auto path = cache.chain(c)) return std::move(*path);
  }
  throw Error(ErrorKind::VerificationFailed, "no candidate path verified");
}

OrthPath connect_direct_sum(const Element& x, const Element& y, std::size_t at, const Tolerances& tol) {
  require_same_shape(x, y);
  require_nonzero(x, "path endpoint is zero");
  require_nonzero(y, "path endpoint is zero");
  const auto [a1, b1] = split(x, at);
  const auto [a2, b2] = split(y, at);
  if (is_right_invertible(x, tol) || is_right_invertible(y, tol)) {
    throw Error(ErrorKind::RightInvertibleEndpoint, "right invertible endpoints are isolated");
  }
  if (projective_equal(x, y, tol)) return OrthPath{{x}, {}};

  const AlgebraShape& sa = a1.shape();
  const AlgebraShape& sb = b1.shape();
  auto deficient = [&](const Element& e) { return e.is_zero() || !is_right_invertible(e, tol); };
  auto partner = [&](const Element& e) {
    return e.is_zero() ? Element::identity(e.shape()) : non_isolated_witness(e, tol);
  };
  auto in_a = [&](const Element& e) { return direct_sum(e, Element::zero(sb)); };
  auto in_b = [&](const Element& e) { return direct_sum(Element::zero(sa), e); };

  if (deficient(a1) && deficient(b2)) {
    if (a1.is_zero() && b2.is_zero()) {
      if (auto p = try_path({x, y}, tol)) return std::move(*p);
    }
    if (auto p = try_path({x, in_a(partner(a1)), in_b(partner(b2)), y}, tol)) return std::move(*p);
  }
  if (deficient(b1) && deficient(a2)) {
    if (b1.is_zero() && a2.is_zero()) {
      if (auto p = try_path({x, y}, tol)) return std::move(*p);
    }
    if (auto p = try_path({x, in_b(partner(b1)), in_a(partner(a2)), y}, tol)) return std::move(*p);
  }

  // Path inside one summand between the (possibly zero) components, lifted
  // with zeros in the other summand.
  auto inside = [&](const Element& u1, const Element& u2, auto lift) -> std::optional<OrthPath> {
    std::vector<std::vector<Element>> interiors;
    if (u1.is_zero() && u2.is_zero()) {
      interiors.push_back({Element::identity(u1.shape())});
    } else if (u1.is_zero()) {
      interiors.push_back({non_isolated_witness(u2, tol)});
    } else if (u2.is_zero()) {
      interiors.push_back({non_isolated_witness(u1, tol)});
    } else {
      if (projective_equal(u1, u2, tol)) {
        interiors.push_back({non_isolated_witness(u1, tol)});
      } else if (!u1.shape().is_small()) {
        try {
          OrthPath inner = connect(u1, u2, tol);
          if (inner.length() >= 2) interiors.emplace_back(inner.vertices.begin() + 1, inner.vertices.end() - 1);
        } catch (const Error&) {
          // fall back to the single-witness chains below
        }
      }
      interiors.push_back({non_isolated_witness(u1, tol)});
      interiors.push_back({non_isolated_witness(u2, tol)});
    }
    for (const auto& interior : interiors) {
      std::vector<Element> chain{x};
      for (const Element& e : interior) chain.push_back(lift(e));
      chain.push_back(y);
      if (auto p = try_path(std::move(chain), tol)) return p;
    }
    return std::nullopt;
  };
  if (deficient(b1) && deficient(b2)) {
    if (auto p = inside(b1, b2, in_b)) return std::move(*p);
  }
  if (deficient(a1) && deficient(a2)) {
    if (auto p = inside(a1, a2, in_a)) return std::move(*p);
  }
  return connect(x, y, tol);
}

}  // namespace orthograph
