#pragma once

#include <string>
#include <utility>
#include <vector>

#include "moltrap/model.hpp"

namespace moltrap {

/// Which single-molecule transition the microwave couples.
enum class DriveTarget { down_to_e, up_to_e };

enum class Protocol { blockade_cz, iswap, pi_pi, quasi_blockade };

/// Internal basis and coupling layout for one gate protocol.
///
/// Labels are two-character strings over {u, d, e} (control molecule first).
/// The blockade-CZ, pi-pi and quasi-blockade protocols use the full 9-state
/// product basis. The iSWAP family uses the 6-state basis
/// {uu, ud, du, dd, ue, eu}: the doubly-excited ladder {de, ed, ee} reached
/// from |dd> is excluded, which makes |dd> a spectator; this is the block
/// structure under which the exchange-gate optima exist.
struct ProtocolSpace {
  Protocol protocol;
  DriveTarget drive;
  std::vector<std::string> internal_labels;
  std::array<int, 4> computational{};  // indices of uu, ud, du, dd
  int ddi_upper = -1, ddi_lower = -1;  // indices of ue, eu
  std::vector<Mode> modes;             // active motional modes (may be empty)

  int internal_dim() const { return static_cast<int>(internal_labels.size()); }
  HilbertSpace space() const;
  int label_index(const std::string& label) const;

  /// Drive graph for a target: pairs (upper, lower) with matrix element
  /// amp/2 |upper><lower| + h.c. per edge. Empty if the basis cannot
  /// support that transition.
  std::vector<std::pair<int, int>> drive_edges(DriveTarget target) const;
};

ProtocolSpace make_protocol_space(Protocol protocol, std::vector<Mode> modes = {});

/// Ideal computational-subspace map, basis order {uu, ud, du, dd}.
/// phi and theta are used by the quasi-blockade C(phi) target only:
/// diag(e^{4 i theta}, rho, rho, 1) with rho = -e^{-i phi/2} e^{2 i theta}.
Eigen::Matrix4cd target_unitary(Protocol protocol, double phi = 3.14159265358979323846,
                                double theta = 0.0);

}  // namespace moltrap
