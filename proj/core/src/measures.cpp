#include "udw/measures.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace udw::measures {

namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

std::array<Complex, 16> DensityMatrix4::matrix() const {
  std::array<Complex, 16> r{};
  double La_ = La(), Lb_ = Lb();
  Complex Lab_ = Lab(), M_ = M();
  r[0 * 4 + 0] = 1.0 - La_ - Lb_;
  r[0 * 4 + 3] = std::conj(M_);
  r[1 * 4 + 1] = La_;
  r[1 * 4 + 2] = Lab_;
  r[2 * 4 + 1] = std::conj(Lab_);
  r[2 * 4 + 2] = Lb_;
  r[3 * 4 + 0] = M_;
  return r;
}

DensityMatrix4 assemble(const Params& p, const Elements4& elems) {
  p.validate();
  DensityMatrix4 dm;
  dm.l_aa = elems.l_aa;
  dm.l_bb = elems.l_bb;
  dm.l_ab = elems.l_ab;
  dm.m = elems.m;
  dm.lambda_a = p.lambda_a;
  dm.lambda_b = p.lambda_b;
  if (dm.La() > 0.5 || dm.Lb() > 0.5)
    fail(ErrorKind::PerturbativityViolated,
         "assemble: lambda^2 L exceeds 0.5; leading-order state not meaningful");
  if (dm.La() < -1e-12 || dm.Lb() < -1e-12)
    fail(ErrorKind::InvalidArgument, "assemble: negative excitation probability");
  return dm;
}

CorrelationMeasures negativity(const DensityMatrix4& dm) {
  CorrelationMeasures out;
  double La = dm.La(), Lb = dm.Lb();
  double Mabs = std::abs(dm.M());
  out.negativity_2 =
      -0.5 * (La + Lb - std::sqrt((La - Lb) * (La - Lb) + 4.0 * Mabs * Mabs));
  out.negativity = std::max(out.negativity_2, 0.0);

  // independent route: eigenvalues of the partial transpose over detector A,
  // rho^G[(a,b),(a',b')] = rho[(a',b),(a,b')]
  auto rho = dm.matrix();
  Eigen::Matrix4cd pt;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int ap = 0; ap < 2; ++ap)
        for (int bp = 0; bp < 2; ++bp)
          pt(2 * a + b, 2 * ap + bp) = rho[(2 * ap + b) * 4 + (2 * a + bp)];
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(pt);
  double neg = 0.0;
  for (int i = 0; i < 4; ++i) {
    double ev = es.eigenvalues()[i];
    if (ev < 0.0) neg -= ev;
  }
  out.negativity_eig = neg;
  return out;
}

CorrelationMeasures mutual_information(const DensityMatrix4& dm) {
  CorrelationMeasures out;
  double La = dm.La(), Lb = dm.Lb();
  double ab2 = std::norm(dm.Lab());
  double root = std::sqrt((La - Lb) * (La - Lb) + 4.0 * ab2);
  out.l_plus = 0.5 * (La + Lb + root);
  out.l_minus = 0.5 * (La + Lb - root);
  out.mutual_information =
      xlogx(out.l_plus) + xlogx(out.l_minus) - xlogx(La) - xlogx(Lb);
  return out;
}

CorrelationMeasures correlation_measures(const DensityMatrix4& dm) {
  CorrelationMeasures n = negativity(dm);
  CorrelationMeasures i = mutual_information(dm);
  n.mutual_information = i.mutual_information;
  n.l_plus = i.l_plus;
  n.l_minus = i.l_minus;
  return n;
}

}  // namespace udw::measures
