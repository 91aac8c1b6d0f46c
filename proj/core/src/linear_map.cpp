#include "cosparse/linear_map.hpp"

#include <algorithm>
#include <cmath>

#include "cosparse/rng.hpp"

namespace cosparse {

CMatrix LinearMap::to_dense() const {
  CMatrix out(rows(), cols());
  CVector e = CVector::Zero(cols());
  CVector col;
  for (Index j = 0; j < cols(); ++j) {
    e[j] = 1.0;
    apply_into(e, col);
    out.col(j) = col;
    e[j] = 0.0;
  }
  return out;
}

DenseMap::DenseMap(CMatrix matrix) : matrix_(std::move(matrix)) {
  real_ = (matrix_.imag().array() == 0.0).all();
}

void DenseMap::apply_into(const CVector& in, CVector& out) const {
  require(in.size() == cols(), "DenseMap::apply: input length mismatch");
  out.noalias() = matrix_ * in;
}

void DenseMap::adjoint_into(const CVector& in, CVector& out) const {
  require(in.size() == rows(), "DenseMap::adjoint: input length mismatch");
  out.noalias() = matrix_.adjoint() * in;
}

RealDenseMap::RealDenseMap(RMatrix matrix) : matrix_(std::move(matrix)) {}

void RealDenseMap::apply_into(const CVector& in, CVector& out) const {
  require(in.size() == cols(), "RealDenseMap::apply: input length mismatch");
  const RVector re = matrix_ * in.real();
  const RVector im = matrix_ * in.imag();
  out.resize(rows());
  out.real() = re;
  out.imag() = im;
}

void RealDenseMap::adjoint_into(const CVector& in, CVector& out) const {
  require(in.size() == rows(), "RealDenseMap::adjoint: input length mismatch");
  const RVector re = matrix_.transpose() * in.real();
  const RVector im = matrix_.transpose() * in.imag();
  out.resize(cols());
  out.real() = re;
  out.imag() = im;
}

void ScaledMap::apply_into(const CVector& in, CVector& out) const {
  inner_->apply_into(in, out);
  out *= scale_;
}

void ScaledMap::adjoint_into(const CVector& in, CVector& out) const {
  inner_->adjoint_into(in, out);
  out *= scale_;
}

ComposedMap::ComposedMap(LinearMapPtr outer, LinearMapPtr inner)
    : outer_(std::move(outer)), inner_(std::move(inner)) {
  require(outer_->cols() == inner_->rows(), "ComposedMap: inner rows != outer cols");
}

void ComposedMap::apply_into(const CVector& in, CVector& out) const {
  CVector mid;
  inner_->apply_into(in, mid);
  outer_->apply_into(mid, out);
}

void ComposedMap::adjoint_into(const CVector& in, CVector& out) const {
  CVector mid;
  outer_->adjoint_into(in, mid);
  inner_->adjoint_into(mid, out);
}

HStackMap::HStackMap(std::vector<LinearMapPtr> blocks) : blocks_(std::move(blocks)) {
  require(!blocks_.empty(), "HStackMap: no blocks");
  rows_ = blocks_.front()->rows();
  for (const auto& b : blocks_) {
    require(b->rows() == rows_, "HStackMap: blocks disagree on row count");
    cols_ += b->cols();
  }
}

void HStackMap::apply_into(const CVector& in, CVector& out) const {
  require(in.size() == cols_, "HStackMap::apply: input length mismatch");
  out = CVector::Zero(rows_);
  CVector part;
  Index offset = 0;
  for (const auto& b : blocks_) {
    b->apply_into(in.segment(offset, b->cols()), part);
    out += part;
    offset += b->cols();
  }
}

void HStackMap::adjoint_into(const CVector& in, CVector& out) const {
  out.resize(cols_);
  CVector part;
  Index offset = 0;
  for (const auto& b : blocks_) {
    b->adjoint_into(in, part);
    out.segment(offset, b->cols()) = part;
    offset += b->cols();
  }
}

bool HStackMap::has_real_entries() const {
  return std::all_of(blocks_.begin(), blocks_.end(),
                     [](const LinearMapPtr& b) { return b->has_real_entries(); });
}

BlockDiagMap::BlockDiagMap(std::vector<LinearMapPtr> blocks) : blocks_(std::move(blocks)) {
  require(!blocks_.empty(), "BlockDiagMap: no blocks");
  for (const auto& b : blocks_) {
    rows_ += b->rows();
    cols_ += b->cols();
  }
}

void BlockDiagMap::apply_into(const CVector& in, CVector& out) const {
  require(in.size() == cols_, "BlockDiagMap::apply: input length mismatch");
  out.resize(rows_);
  CVector part;
  Index r = 0, c = 0;
  for (const auto& b : blocks_) {
    b->apply_into(in.segment(c, b->cols()), part);
    out.segment(r, b->rows()) = part;
    r += b->rows();
    c += b->cols();
  }
}

void BlockDiagMap::adjoint_into(const CVector& in, CVector& out) const {
  require(in.size() == rows_, "BlockDiagMap::adjoint: input length mismatch");
  out.resize(cols_);
  CVector part;
  Index r = 0, c = 0;
  for (const auto& b : blocks_) {
    b->adjoint_into(in.segment(r, b->rows()), part);
    out.segment(c, b->cols()) = part;
    r += b->rows();
    c += b->cols();
  }
}

bool BlockDiagMap::has_real_entries() const {
  return std::all_of(blocks_.begin(), blocks_.end(),
                     [](const LinearMapPtr& b) { return b->has_real_entries(); });
}

double adjoint_mismatch(const LinearMap& map, int pairs, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int p = 0; p < pairs; ++p) {
    CVector u(map.cols()), v(map.rows());
    for (Index i = 0; i < u.size(); ++i) u[i] = rng.complex_normal();
    for (Index i = 0; i < v.size(); ++i) v[i] = rng.complex_normal();
    const Complex lhs = map.apply(u).dot(v);     // <Ku, v> (conjugate-linear in first slot)
    const Complex rhs = u.dot(map.adjoint(v));   // <u, K^*v>
    const double scale = u.norm() * v.norm();
    if (scale > 0.0) worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

}  // namespace cosparse
