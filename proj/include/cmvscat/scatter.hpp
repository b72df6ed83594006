#pragma once

#include <utility>
#include <vector>

#include "cmvscat/circle.hpp"
#include "cmvscat/opuc.hpp"

namespace cmvscat {

struct ScatteringData {
  CircleFunction s;
  DiskFunction D;
  // Boundary values of D_*(z) = conj(D(1/conj z)), i.e. conj(D(t)).
  CircleFunction D_star;
  cplx a_minus1;
  DiskFunction R;
  CircleFunction w;

  double D0() const { return D.center().real(); }
  const Conditioning& conditioning() const noexcept { return D.conditioning(); }
};

ScatteringData forward_scatter(const VerblunskySeq& seq, const CircleGrid& grid);

// s = -a_{-1} D / D_* from an arbitrary positive weight.
ScatteringData scatter_from_weight(const CircleFunction& w, cplx a_minus1);

struct PhiPsi {
  DiskFunction phi;
  DiskFunction psi;
};

// phi = conj(a_{-1}) (R(0) - R)/(R(0) + R); psi outer with |psi|^2 = 1 - |phi|^2.
PhiPsi phi_from_R(const DiskFunction& R, cplx a_minus1);

// Each kernel is a pair (analytic inside, analytic outside).
struct KernelPair {
  DiskFunction k0_inner;
  DiskFunction k0_outer;
  DiskFunction kinf_inner;
  DiskFunction kinf_outer;

  // (K_inf)_1(0) / (K_0)_1(0)
  cplx center_ratio() const { return kinf_inner.center() / k0_inner.center(); }
};

KernelPair kernels_from_spectral(const DiskFunction& R, const DiskFunction& D, cplx a_minus1);

// The pair (F1, F2) = (P+(w f)/D, -a_{-1} P-(w f)/D_*) of a function f in L^2(w dm).
struct ScatterPair {
  CircleFunction first;
  CircleFunction second;
};

ScatterPair scatter_transform(const ScatteringData& data, const CircleFunction& f);

// integral (s F1 + F2) conj(s G1 + G2) dm
cplx scatter_inner(const CircleFunction& s, const ScatterPair& f, const ScatterPair& g);
cplx scatter_inner(const CircleFunction& s, const ScatterPair& f, const DiskFunction& g_inner,
                   const DiskFunction& g_outer);

// For each n: (|| t^{-n} D_* P_{2n} - 1 ||, || t^{n+1} D P_{2n+1} + conj(a_{-1}) ||) in grid L^2.
std::vector<std::pair<double, double>> szego_asymptotics_residual(const ScatteringData& data,
                                                                  const LaurentBasis& basis,
                                                                  const std::vector<std::size_t>& n_list);

}  // namespace cmvscat
