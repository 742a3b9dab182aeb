#pragma once

#include <optional>

#include "stdma/net.hpp"

namespace fixtures {

inline stdma::RadioParams make_params(double p_mw, double n0_dbm, double gc_db,
                                      std::optional<double> gi_db = {}) {
  stdma::RadioParams p;
  p.tx_power_mw = p_mw;
  p.path_loss_exp = 4.0;
  p.noise_mw = stdma::db_to_linear(n0_dbm);
  p.comm_thresh = stdma::db_to_linear(gc_db);
  if (gi_db) p.intf_thresh = stdma::db_to_linear(*gi_db);
  return p;
}

// 10 mW, -90 dBm noise, 20 dB decode, 10 dB interference: ranges 100 / 177.8 m.
inline stdma::RadioParams dense_params() {
  return make_params(10.0, -90.0, 20.0, 10.0);
}

// 15 mW, -85 dBm noise, 15 dB decode, 7 dB interference: ranges 110.7 / 175.4 m.
inline stdma::RadioParams sparse_params() {
  return make_params(15.0, -85.0, 15.0, 7.0);
}

// Six-node mesh with a pendant: 14 communication edges, and with the 10 dB
// interference tier another 14 interference-only edges.
inline stdma::Network six_node_mesh(bool with_intf = true) {
  stdma::Network net;
  net.nodes = {{-40, 5}, {0, 0}, {95, 0}, {135, 0}, {-75, 0}, {0, -75}};
  net.params = with_intf ? dense_params() : make_params(10.0, -90.0, 20.0);
  return net;
}

// Four-node chain (the mesh's nodes 1-4 alone): 6 directed communication
// edges, no interference tier.
inline stdma::Network four_node_chain() {
  stdma::Network net;
  net.nodes = {{-40, 5}, {0, 0}, {95, 0}, {135, 0}};
  net.params = make_params(10.0, -90.0, 20.0);
  return net;
}

// Three parallel 90 m links spread along a line; all three fit in one slot.
inline stdma::Network three_link_line() {
  stdma::Network net;
  net.nodes = {{-360, 0}, {-450, 0}, {90, 0}, {0, 0}, {360, 0}, {450, 0}};
  net.params = make_params(10.0, -90.0, 20.0);
  return net;
}

// Two 50 m links, 120 m apart tip-to-tip; both decode when co-slotted.
inline stdma::Network two_link_line() {
  stdma::Network net;
  net.nodes = {{0, 0}, {50, 0}, {220, 0}, {170, 0}};
  net.params = make_params(10.0, -90.0, 20.0);
  return net;
}

// Two broadcast clusters on a line: transmitters 1 and 4 with two listeners
// each; co-slotted, exactly one of the four receptions decodes.
inline stdma::Network two_cluster_net() {
  stdma::Network net;
  net.nodes = {{0, 0}, {-80, 0}, {90, 0}, {280, 0}, {200, 0}, {370, 0}};
  net.params = make_params(10.0, -90.0, 20.0);
  return net;
}

}  // namespace fixtures
