#pragma once

#include <charconv>
#include <optional>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "qcos/circuit.hpp"
#include "qcos/errors.hpp"
#include "qcos/gate.hpp"

namespace qcos::qasm {

/// How controlled swaps are emitted.
enum class FredkinMode {
  native,   // `cswap c,a,b;`
  toffoli,  // `cx b,a; ccx c,a,b; cx b,a;`
};

struct ExportOptions {
  FredkinMode fredkin = FredkinMode::native;
  QubitList measure;  // qubits measured into creg c at the end, in order
};

/// Shortest round-trip decimal form of `v`.
inline std::string format_angle(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw InternalError("angle formatting failed");
  return std::string(buf, end);
}

namespace detail {

inline void lower_cry(Circuit& out, double angle, QubitIndex control, QubitIndex target) {
  out.add(Gate::ry(angle / 2.0, target));
  out.add(Gate::cnot(control, target));
  out.add(Gate::ry(-angle / 2.0, target));
  out.add(Gate::cnot(control, target));
}

[[noreturn]] inline void unsupported(const Gate& g) {
  throw UnsupportedGate("unsupported gate for OpenQASM 2.0 export: " + g.describe());
}

}  // namespace detail

/// Rewrites `circuit` into gates that map one-to-one onto qelib1 instructions:
/// h, x, ry, cx, ccx and (in native mode) cswap.
///   controlled-H  -> ry(pi/4) t; cx c,t; ry(-pi/4) t
///   controlled-RY -> ry(a/2) t; cx c,t; ry(-a/2) t; cx c,t
///   CC-RY         -> CRY(a/2; c1), cx c0,c1, CRY(-a/2; c1), cx c0,c1, CRY(a/2; c0)
/// Anything with more controls throws UnsupportedGate.
inline Circuit lower(const Circuit& circuit, FredkinMode mode = FredkinMode::native) {
  Circuit out(circuit.num_qubits());
  for (const auto& [name, qs] : circuit.roles()) out.set_role(name, qs);
  for (const auto& g : circuit.gates()) {
    const auto& c = g.controls();
    const QubitIndex t = g.targets()[0];
    switch (g.kind()) {
      case GateKind::H:
        if (c.empty()) {
          out.add(g);
        } else if (c.size() == 1) {
          out.add(Gate::ry(std::numbers::pi / 4.0, t));
          out.add(Gate::cnot(c[0], t));
          out.add(Gate::ry(-std::numbers::pi / 4.0, t));
        } else {
          detail::unsupported(g);
        }
        break;
      case GateKind::X:
        out.add(g);
        break;
      case GateKind::CNOT:
        if (c.size() > 2) detail::unsupported(g);
        out.add(g);
        break;
      case GateKind::RY:
        if (c.empty()) {
          out.add(g);
        } else if (c.size() == 1) {
          detail::lower_cry(out, g.angle(), c[0], t);
        } else if (c.size() == 2) {
          detail::lower_cry(out, g.angle() / 2.0, c[1], t);
          out.add(Gate::cnot(c[0], c[1]));
          detail::lower_cry(out, -g.angle() / 2.0, c[1], t);
          out.add(Gate::cnot(c[0], c[1]));
          detail::lower_cry(out, g.angle() / 2.0, c[0], t);
        } else {
          detail::unsupported(g);
        }
        break;
      case GateKind::Fredkin: {
        if (c.size() != 1) detail::unsupported(g);
        const QubitIndex a = g.targets()[0];
        const QubitIndex b = g.targets()[1];
        if (mode == FredkinMode::native) {
          out.add(g);
        } else {
          out.add(Gate::cnot(b, a));
          out.add(Gate::toffoli(c[0], a, b));
          out.add(Gate::cnot(b, a));
        }
        break;
      }
    }
  }
  return out;
}

/// OpenQASM 2.0 text of `circuit`, after lowering.
inline std::string export_qasm(const Circuit& circuit, const ExportOptions& opts = {}) {
  const Circuit low = lower(circuit, opts.fredkin);
  std::ostringstream os;
  os << "OPENQASM 2.0;\n";
  os << "include \"qelib1.inc\";\n";
  os << "qreg q[" << low.num_qubits() << "];\n";
  if (!opts.measure.empty()) os << "creg c[" << opts.measure.size() << "];\n";
  auto q = [](QubitIndex i) { return "q[" + std::to_string(i) + "]"; };
  for (const auto& g : low.gates()) {
    const auto& c = g.controls();
    const auto& t = g.targets();
    switch (g.kind()) {
      case GateKind::H: os << "h " << q(t[0]) << ";\n"; break;
      case GateKind::X: os << "x " << q(t[0]) << ";\n"; break;
      case GateKind::RY: os << "ry(" << format_angle(g.angle()) << ") " << q(t[0]) << ";\n"; break;
      case GateKind::CNOT:
        if (c.size() == 1) {
          os << "cx " << q(c[0]) << "," << q(t[0]) << ";\n";
        } else {
          os << "ccx " << q(c[0]) << "," << q(c[1]) << "," << q(t[0]) << ";\n";
        }
        break;
      case GateKind::Fredkin:
        os << "cswap " << q(c[0]) << "," << q(t[0]) << "," << q(t[1]) << ";\n";
        break;
    }
  }
  for (std::size_t k = 0; k < opts.measure.size(); ++k) {
    if (opts.measure[k] >= low.num_qubits()) throw InvalidCircuit("measured qubit out of range");
    os << "measure " << q(opts.measure[k]) << " -> c[" << k << "];\n";
  }
  return os.str();
}

class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : DataError("qasm line " + std::to_string(line) + ": " + what) {}
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline QubitIndex parse_qubit(std::string_view tok, std::size_t line) {
  tok = trim(tok);
  if (tok.size() < 4 || tok.substr(0, 2) != "q[" || tok.back() != ']') {
    throw ParseError(line, "expected q[<n>], got '" + std::string(tok) + "'");
  }
  QubitIndex v = 0;
  auto body = tok.substr(2, tok.size() - 3);
  auto [p, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
  if (ec != std::errc{} || p != body.data() + body.size()) {
    throw ParseError(line, "bad qubit index '" + std::string(tok) + "'");
  }
  return v;
}

inline QubitList parse_operands(std::string_view s, std::size_t line) {
  QubitList out;
  while (!s.empty()) {
    const auto comma = s.find(',');
    out.push_back(parse_qubit(s.substr(0, comma), line));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace detail

/// Reads back the subset emitted by export_qasm (h, x, ry(<number>), cx, ccx, cswap).
/// creg, measure and barrier statements are accepted and ignored.
inline Circuit import_qasm(std::string_view text) {
  std::optional<Circuit> circuit;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (auto cmt = line.find("//"); cmt != std::string_view::npos) line = line.substr(0, cmt);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.back() != ';') throw ParseError(line_no, "missing ';'");
    line = detail::trim(line.substr(0, line.size() - 1));

    const auto sp = line.find_first_of(" (");
    const std::string_view op = line.substr(0, sp);
    std::string_view rest = sp == std::string_view::npos ? std::string_view{} : line.substr(sp);

    if (op == "OPENQASM" || op == "include" || op == "creg" || op == "measure" ||
        op == "barrier") {
      continue;
    }
    if (op == "qreg") {
      if (circuit) throw ParseError(line_no, "only one qreg is supported");
      const auto qs = detail::parse_qubit(rest, line_no);
      circuit.emplace(qs);
      continue;
    }
    if (!circuit) throw ParseError(line_no, "gate before qreg");

    double angle = 0.0;
    if (op == "ry") {
      rest = detail::trim(rest);
      const auto close = rest.find(')');
      if (rest.empty() || rest.front() != '(' || close == std::string_view::npos) {
        throw ParseError(line_no, "ry needs a parenthesized angle");
      }
      const auto num = detail::trim(rest.substr(1, close - 1));
      auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), angle);
      if (ec != std::errc{} || p != num.data() + num.size()) {
        throw ParseError(line_no, "bad angle '" + std::string(num) + "'");
      }
      rest = rest.substr(close + 1);
    }
    const QubitList ops = detail::parse_operands(detail::trim(rest), line_no);
    auto need = [&](std::size_t n) {
      if (ops.size() != n) throw ParseError(line_no, std::string(op) + " takes " + std::to_string(n) + " operands");
    };
    if (op == "h") {
      need(1);
      circuit->add(Gate::h(ops[0]));
    } else if (op == "x") {
      need(1);
      circuit->add(Gate::x(ops[0]));
    } else if (op == "ry") {
      need(1);
      circuit->add(Gate::ry(angle, ops[0]));
    } else if (op == "cx") {
      need(2);
      circuit->add(Gate::cnot(ops[0], ops[1]));
    } else if (op == "ccx") {
      need(3);
      circuit->add(Gate::toffoli(ops[0], ops[1], ops[2]));
    } else if (op == "cswap") {
      need(3);
      circuit->add(Gate::fredkin(ops[0], ops[1], ops[2]));
    } else {
      throw ParseError(line_no, "unsupported instruction '" + std::string(op) + "'");
    }
  }
  if (!circuit) throw ParseError(line_no, "no qreg declaration");
  return std::move(*circuit);
}

}  // namespace qcos::qasm
