#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "corrmap/channels.hpp"
#include "corrmap/complex_matrix.hpp"
#include "corrmap/states.hpp"

namespace corrmap::analysis {

// Matrix view of a channel on an n-dimensional system. Composite indices
// are row-major pairs:
//   lambda[(i*n+j), (k*n+l)] = <i| Phi[|k><l|] |j>
//   choi  [(i*n+k), (j*n+l)] = lambda[(i*n+j), (k*n+l)]
// so a trace-preserving channel has Choi partial trace over the first
// factor equal to the identity and trace n.
struct ChannelRep {
  ComplexMatrix lambda;
  ComplexMatrix choi;
  int dim = 0;
};

struct CpReport {
  double min_choi_eig = 0.0;
  double tp_defect = 0.0;
  bool is_cp = false;
  double tol = 0.0;
};

ChannelRep rep_from_kraus(const channels::KrausSet& ks);

// Build the representation of an arbitrary linear map given its action on
// matrix units.
ChannelRep rep_from_map(int dim,
                        const std::function<ComplexMatrix(const ComplexMatrix&)>& map);

// The lambda <-> choi index swap; an involution.
ComplexMatrix reshuffle(const ComplexMatrix& m, int dim);

ChannelRep rep_from_lambda(ComplexMatrix lambda, int dim);

CpReport cp_report(const ChannelRep& rep, double tol = 1e-10);

// Apply the channel through its lambda matrix.
ComplexMatrix apply_rep(const ChannelRep& rep, const ComplexMatrix& x);

// Without a domain: Frobenius distance of the lambda matrices. With a
// domain: largest output distance over the supplied states.
double channel_distance(const ChannelRep& a, const ChannelRep& b);
double channel_distance(const ChannelRep& a, const ChannelRep& b,
                        const std::vector<states::DensityMatrix>& domain);

struct BlochSample {
  std::array<double, 3> in;
  std::array<double, 3> out;
};

// Push a Fibonacci-lattice sample of pure-state Bloch vectors through a
// qubit channel.
std::vector<BlochSample> bloch_image(const ChannelRep& rep, int samples);

}  // namespace corrmap::analysis
