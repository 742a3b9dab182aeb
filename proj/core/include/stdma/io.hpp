#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "stdma/broadcast.hpp"
#include "stdma/linksched.hpp"
#include "stdma/net.hpp"
#include "stdma/splitting.hpp"

namespace stdma {

// Network file: first line the node count, one "x y" line per node, then
// "P_mW beta N0_dBm gamma_c_dB [gamma_i_dB]". Parse errors throw
// std::runtime_error.
Network parse_network(std::istream& in);
void print_network(std::ostream& out, const Network& net);
Network load_network(const std::string& path);
void save_network(const std::string& path, const Network& net);

// One line per slot; point-to-point slots hold "tx->rx" tokens, broadcast
// slots "tx->*" tokens.
LinkSchedule parse_link_schedule(std::istream& in);
void print_link_schedule(std::ostream& out, const LinkSchedule& s);
NodeSchedule parse_node_schedule(std::istream& in);
void print_node_schedule(std::ostream& out, const NodeSchedule& s);

// "slot start width tag n_left n_right feedback" per line.
void print_trace(std::ostream& out, std::span<const SlotTrace> trace);

// Fixed six-significant-digit rendering used by every CSV emitter.
std::string fmt_sig(double v);

}  // namespace stdma
