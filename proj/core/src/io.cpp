#include "stdma/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace stdma {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

[[noreturn]] void bad(const std::string& what) {
  throw std::runtime_error("malformed input: " + what);
}

// "a->b" or "a->*"; rx 0 encodes the broadcast star.
bool parse_arrow(const std::string& tok, int& tx, int& rx) {
  auto pos = tok.find("->");
  if (pos == std::string::npos || pos == 0 || pos + 2 >= tok.size())
    return false;
  try {
    size_t used = 0;
    tx = std::stoi(tok.substr(0, pos), &used);
    if (used != pos) return false;
    std::string rhs = tok.substr(pos + 2);
    if (rhs == "*") {
      rx = 0;
      return true;
    }
    rx = std::stoi(rhs, &used);
    return used == rhs.size();
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

Network parse_network(std::istream& in) {
  Network net;
  int n = 0;
  if (!(in >> n) || n < 0) bad("node count");
  net.nodes.resize(static_cast<size_t>(n));
  for (auto& p : net.nodes)
    if (!(in >> p.x >> p.y)) bad("node coordinates");
  double p_mw = 0, beta = 0, n0_dbm = 0, gc_db = 0;
  if (!(in >> p_mw >> beta >> n0_dbm >> gc_db)) bad("radio parameter line");
  net.params.tx_power_mw = p_mw;
  net.params.path_loss_exp = beta;
  net.params.noise_mw = db_to_linear(n0_dbm);
  net.params.comm_thresh = db_to_linear(gc_db);
  double gi_db = 0;
  if (in >> gi_db) net.params.intf_thresh = db_to_linear(gi_db);
  validate(net);
  return net;
}

void print_network(std::ostream& out, const Network& net) {
  out << net.size() << '\n';
  for (const auto& p : net.nodes) out << num(p.x) << ' ' << num(p.y) << '\n';
  out << num(net.params.tx_power_mw) << ' ' << num(net.params.path_loss_exp)
      << ' ' << num(linear_to_db(net.params.noise_mw)) << ' '
      << num(linear_to_db(net.params.comm_thresh));
  if (net.params.intf_thresh)
    out << ' ' << num(linear_to_db(*net.params.intf_thresh));
  out << '\n';
}

Network load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_network(in);
}

void save_network(const std::string& path, const Network& net) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  print_network(out, net);
}

LinkSchedule parse_link_schedule(std::istream& in) {
  LinkSchedule s;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<Link> slot;
    std::string tok;
    while (ls >> tok) {
      int tx = 0, rx = 0;
      if (!parse_arrow(tok, tx, rx) || rx == 0) bad("link token '" + tok + "'");
      slot.push_back({tx, rx});
    }
    if (!slot.empty()) s.slots.push_back(std::move(slot));
  }
  return s;
}

void print_link_schedule(std::ostream& out, const LinkSchedule& s) {
  for (const auto& slot : s.slots) {
    for (size_t i = 0; i < slot.size(); ++i) {
      if (i) out << ' ';
      out << slot[i].tx << "->" << slot[i].rx;
    }
    out << '\n';
  }
}

NodeSchedule parse_node_schedule(std::istream& in) {
  NodeSchedule s;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<int> slot;
    std::string tok;
    while (ls >> tok) {
      int tx = 0, rx = 0;
      if (!parse_arrow(tok, tx, rx) || rx != 0)
        bad("broadcast token '" + tok + "'");
      slot.push_back(tx);
    }
    if (!slot.empty()) s.slots.push_back(std::move(slot));
  }
  return s;
}

void print_node_schedule(std::ostream& out, const NodeSchedule& s) {
  for (const auto& slot : s.slots) {
    for (size_t i = 0; i < slot.size(); ++i) {
      if (i) out << ' ';
      out << slot[i] << "->*";
    }
    out << '\n';
  }
}

void print_trace(std::ostream& out, std::span<const SlotTrace> trace) {
  for (const auto& t : trace)
    out << t.slot << ' ' << num(t.alloc_start) << ' ' << num(t.alloc_width)
        << ' ' << t.tag << ' ' << t.n_left << ' ' << t.n_right << ' '
        << t.feedback << '\n';
}

std::string fmt_sig(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace stdma
