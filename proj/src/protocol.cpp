#include "moltrap/protocol.hpp"

#include <algorithm>
#include <cmath>

namespace moltrap {

HilbertSpace ProtocolSpace::space() const {
  std::vector<int> dims;
  for (const Mode& m : modes) dims.push_back(m.dim);
  return HilbertSpace(internal_dim(), dims);
}

int ProtocolSpace::label_index(const std::string& label) const {
  auto it = std::find(internal_labels.begin(), internal_labels.end(), label);
  if (it == internal_labels.end())
    throw std::invalid_argument("no internal state labelled '" + label + "'");
  return static_cast<int>(it - internal_labels.begin());
}

std::vector<std::pair<int, int>> ProtocolSpace::drive_edges(DriveTarget target) const {
  const char lower_char = target == DriveTarget::down_to_e ? 'd' : 'u';
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < internal_dim(); ++i) {
    for (int mol = 0; mol < 2; ++mol) {
      if (internal_labels[i][mol] != lower_char) continue;
      std::string raised = internal_labels[i];
      raised[mol] = 'e';
      auto it = std::find(internal_labels.begin(), internal_labels.end(), raised);
      if (it != internal_labels.end())
        edges.emplace_back(static_cast<int>(it - internal_labels.begin()), i);
    }
  }
  return edges;
}

ProtocolSpace make_protocol_space(Protocol protocol, std::vector<Mode> modes) {
  ProtocolSpace ps;
  ps.protocol = protocol;
  ps.modes = std::move(modes);
  switch (protocol) {
    case Protocol::blockade_cz:
      ps.drive = DriveTarget::down_to_e;
      ps.internal_labels = {"uu", "ud", "du", "dd", "ue", "eu", "de", "ed", "ee"};
      break;
    case Protocol::iswap:
      ps.drive = DriveTarget::down_to_e;
      ps.internal_labels = {"uu", "ud", "du", "dd", "ue", "eu"};
      break;
    case Protocol::pi_pi:
    case Protocol::quasi_blockade:
      ps.drive = DriveTarget::up_to_e;
      ps.internal_labels = {"uu", "ud", "du", "dd", "ue", "eu", "de", "ed", "ee"};
      break;
  }
  ps.computational = {ps.label_index("uu"), ps.label_index("ud"), ps.label_index("du"),
                      ps.label_index("dd")};
  ps.ddi_upper = ps.label_index("ue");
  ps.ddi_lower = ps.label_index("eu");
  return ps;
}

Eigen::Matrix4cd target_unitary(Protocol protocol, double phi, double theta) {
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
  const Complex i1(0, 1);
  switch (protocol) {
    case Protocol::blockade_cz:
      u.diagonal() << 1, 1, 1, -1;
      break;
    case Protocol::iswap:
      // uu -> uu, ud -> -i du, du -> -i ud, dd -> dd
      u(0, 0) = 1;
      u(2, 1) = -i1;
      u(1, 2) = -i1;
      u(3, 3) = 1;
      break;
    case Protocol::pi_pi:
      u.diagonal() << 1, i1, i1, 1;
      break;
    case Protocol::quasi_blockade: {
      const Complex rho = -std::exp(-i1 * (phi / 2.0)) * std::exp(i1 * (2.0 * theta));
      u.diagonal() << std::exp(i1 * (4.0 * theta)), rho, rho, 1.0;
      break;
    }
  }
  return u;
}

}  // namespace moltrap
