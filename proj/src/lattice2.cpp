#include "supnorm/lattice2.hpp"

namespace supnorm {

DiscVisitor::DiscVisitor(const ReducedLattice<double>& lattice) : u_(lattice.basis[0]), v_(lattice.basis[1]) {
  const auto& z = lattice.generator;
  v1_re_ = static_cast<double>(u_.a) * z.x + static_cast<double>(u_.b);
  v1_im_ = static_cast<double>(u_.a) * z.y;
  v2_re_ = static_cast<double>(v_.a) * z.x + static_cast<double>(v_.b);
  v2_im_ = static_cast<double>(v_.a) * z.y;
  det_ = v1_re_ * v2_im_ - v1_im_ * v2_re_;
  double n1 = v1_re_ * v1_re_ + v1_im_ * v1_im_;
  lambda1_ = std::sqrt(n1);
  mu_ = (v2_re_ * v1_re_ + v2_im_ * v1_im_) / n1;
  h_ = std::abs(det_) / lambda1_;
}

} // namespace supnorm
