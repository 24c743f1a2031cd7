#include "supnorm/halfplane.hpp"

namespace supnorm {

template struct UpperHalfPoint<double>;
template struct UpperHalfPoint<Rational>;
template AdmissibilityReport<double> check_admissible(const UpperHalfPoint<double>&, i64);
template AdmissibilityReport<Rational> check_admissible(const UpperHalfPoint<Rational>&, i64);

} // namespace supnorm
