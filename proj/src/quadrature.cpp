#include "quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

namespace mincop::detail {

namespace {

template <unsigned N>
Rule make_rule() {
  using G = boost::math::quadrature::gauss<double, N>;
  const auto& a = G::abscissa();
  const auto& w = G::weights();
  Rule r;
  // Boost stores the positive half of a symmetric rule (all orders here are
  // even); mirror it and map [-1,1] onto [0,1].
  for (std::size_t i = a.size(); i-- > 0;) {
    r.x.push_back(0.5 * (1.0 - a[i]));
    r.w.push_back(0.5 * w[i]);
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    r.x.push_back(0.5 * (1.0 + a[i]));
    r.w.push_back(0.5 * w[i]);
  }
  return r;
}

}  // namespace

const Rule& gauss_legendre(int n) {
  static const Rule r4 = make_rule<4>();
  static const Rule r8 = make_rule<8>();
  static const Rule r12 = make_rule<12>();
  static const Rule r16 = make_rule<16>();
  static const Rule r20 = make_rule<20>();
  static const Rule r24 = make_rule<24>();
  static const Rule r32 = make_rule<32>();
  if (n <= 4) return r4;
  if (n <= 8) return r8;
  if (n <= 12) return r12;
  if (n <= 16) return r16;
  if (n <= 20) return r20;
  if (n <= 24) return r24;
  return r32;
}

}  // namespace mincop::detail
