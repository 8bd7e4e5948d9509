#include "growthlab/poly.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace growthlab {

PolySparse PolySparse::constant(std::uint32_t p, int nvars, std::uint64_t c) {
  PolySparse f(p, nvars);
  f.add_term(std::vector<std::uint8_t>(nvars, 0), c);
  return f;
}

PolySparse PolySparse::variable(std::uint32_t p, int nvars, int index) {
  if (index < 0 || index >= nvars) throw ConfigError("variable index out of range");
  PolySparse f(p, nvars);
  std::vector<std::uint8_t> e(nvars, 0);
  e[index] = 1;
  f.add_term(e, 1);
  return f;
}

void PolySparse::add_term(const std::vector<std::uint8_t>& exps, std::uint64_t coeff) {
  if ((int)exps.size() != nvars_) throw ConfigError("exponent vector arity mismatch");
  coeff %= p_;
  if (coeff == 0) return;
  terms_.push_back({exps, static_cast<std::uint32_t>(coeff)});
  normalize();
}

void PolySparse::normalize() {
  std::map<std::vector<std::uint8_t>, std::uint64_t> acc;
  for (const auto& t : terms_) acc[t.exps] = (acc[t.exps] + t.coeff) % p_;
  terms_.clear();
  for (auto& [e, c] : acc)
    if (c != 0) terms_.push_back({e, static_cast<std::uint32_t>(c)});
}

PolySparse PolySparse::operator+(const PolySparse& o) const {
  if (p_ != o.p_ || nvars_ != o.nvars_) throw ConfigError("polynomial arity/modulus mismatch");
  PolySparse r(p_, nvars_);
  r.terms_ = terms_;
  r.terms_.insert(r.terms_.end(), o.terms_.begin(), o.terms_.end());
  r.normalize();
  return r;
}

PolySparse PolySparse::operator-(const PolySparse& o) const { return *this + o.scaled(p_ - 1); }

PolySparse PolySparse::operator*(const PolySparse& o) const {
  if (p_ != o.p_ || nvars_ != o.nvars_) throw ConfigError("polynomial arity/modulus mismatch");
  PolySparse r(p_, nvars_);
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) {
      std::vector<std::uint8_t> e(nvars_);
      for (int i = 0; i < nvars_; i++) e[i] = static_cast<std::uint8_t>(a.exps[i] + b.exps[i]);
      r.terms_.push_back({e, static_cast<std::uint32_t>((std::uint64_t)a.coeff * b.coeff % p_)});
    }
  r.normalize();
  return r;
}

PolySparse PolySparse::scaled(std::uint64_t c) const {
  PolySparse r(p_, nvars_);
  c %= p_;
  for (const auto& t : terms_) {
    std::uint64_t nc = (std::uint64_t)t.coeff * c % p_;
    if (nc) r.terms_.push_back({t.exps, static_cast<std::uint32_t>(nc)});
  }
  return r;
}

std::uint32_t PolySparse::eval(const std::vector<std::uint32_t>& point) const {
  if ((int)point.size() != nvars_) throw ConfigError("evaluation arity mismatch");
  std::uint64_t acc = 0;
  for (const auto& t : terms_) {
    std::uint64_t v = t.coeff;
    for (int i = 0; i < nvars_; i++) {
      std::uint64_t b = point[i] % p_;
      for (int e = 0; e < t.exps[i]; e++) v = v * b % p_;
    }
    acc = (acc + v) % p_;
  }
  return static_cast<std::uint32_t>(acc);
}

std::uint32_t PolySparse::eval(const GroupElement& g) const {
  if (nvars_ != g.params().dim()) throw ConfigError("polynomial arity does not match n^2");
  if (p_ != g.params().p) throw ConfigError("polynomial modulus does not match params");
  std::vector<std::uint32_t> point(nvars_);
  for (int i = 0; i < nvars_; i++) point[i] = g.entry(i);
  return eval(point);
}

std::string PolySparse::format() const {
  if (terms_.empty()) return "0:" + [this] {
    std::string z;
    for (int i = 0; i < nvars_; i++) z += (i ? ",0" : "0");
    return z;
  }();
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << "+";
    first = false;
    os << t.coeff << ":";
    for (int i = 0; i < nvars_; i++) os << (i ? "," : "") << (int)t.exps[i];
  }
  return os.str();
}

PolySparse PolySparse::parse(std::uint32_t p, int nvars, const std::string& line) {
  PolySparse f(p, nvars);
  std::stringstream ss(line);
  std::string term;
  while (std::getline(ss, term, '+')) {
    if (term.empty()) continue;
    auto colon = term.find(':');
    if (colon == std::string::npos) throw ConfigError("bad polynomial term: " + term);
    std::uint64_t coeff = std::stoull(term.substr(0, colon));
    std::vector<std::uint8_t> exps;
    std::stringstream es(term.substr(colon + 1));
    std::string e;
    while (std::getline(es, e, ',')) exps.push_back(static_cast<std::uint8_t>(std::stoul(e)));
    if ((int)exps.size() != nvars)
      throw ConfigError("term has " + std::to_string(exps.size()) + " exponents, want " +
                        std::to_string(nvars));
    f.add_term(exps, coeff);
  }
  return f;
}

void Variety::write(std::ostream& os) const {
  for (const auto& f : polys) os << f.format() << "\n";
}

Variety Variety::read(std::istream& is, std::uint32_t p, int nvars) {
  Variety v;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    v.polys.push_back(PolySparse::parse(p, nvars, line));
  }
  return v;
}

Variety Variety::load(const std::string& path, std::uint32_t p, int nvars) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open " + path);
  return read(f, p, nvars);
}

namespace {

PolySparse var(const FieldParams& fp, int i) { return PolySparse::variable(fp.p, fp.dim(), i); }

PolySparse trace_poly(const FieldParams& fp) {
  PolySparse t = var(fp, 0);
  for (int i = 1; i < fp.n; i++) t = t + var(fp, i * fp.n + i);
  return t;
}

// For det = 1: tr(g^-1) = tr(adj(g)) = sum of principal 2x2 minors (n = 3).
PolySparse inverse_trace_poly(const FieldParams& fp) {
  auto x = [&](int i, int j) { return var(fp, i * 3 + j); };
  PolySparse m12 = x(1, 1) * x(2, 2) - x(1, 2) * x(2, 1);
  PolySparse m02 = x(0, 0) * x(2, 2) - x(0, 2) * x(2, 0);
  PolySparse m01 = x(0, 0) * x(1, 1) - x(0, 1) * x(1, 0);
  return m12 + m02 + m01;
}

}  // namespace

PolySparse det_minus_one_poly(const FieldParams& fp) {
  auto x = [&](int i, int j) { return var(fp, i * fp.n + j); };
  PolySparse det(fp.p, fp.dim());
  if (fp.n == 2) {
    det = x(0, 0) * x(1, 1) - x(0, 1) * x(1, 0);
  } else {
    det = x(0, 0) * (x(1, 1) * x(2, 2) - x(1, 2) * x(2, 1)) -
          x(0, 1) * (x(1, 0) * x(2, 2) - x(1, 2) * x(2, 0)) +
          x(0, 2) * (x(1, 0) * x(2, 1) - x(1, 1) * x(2, 0));
  }
  return det - PolySparse::constant(fp.p, fp.dim(), 1);
}

PolySparse discriminant_poly(const FieldParams& fp) {
  if (fp.n == 2) {
    // tr^2 - 4
    PolySparse t = trace_poly(fp);
    return t * t - PolySparse::constant(fp.p, fp.dim(), 4);
  }
  // disc(lambda^3 + a l^2 + b l + c), a = -tr, b = tr(g^-1), c = -1:
  // 18abc - 4a^3c + a^2b^2 - 4b^3 - 27c^2
  PolySparse a = trace_poly(fp).scaled(fp.p - 1);
  PolySparse b = inverse_trace_poly(fp);
  auto cnst = [&](std::uint64_t v) { return PolySparse::constant(fp.p, fp.dim(), v); };
  PolySparse t1 = (a * b).scaled(18 % fp.p).scaled(fp.p - 1);          // 18ab * c, c = -1
  PolySparse t2 = (a * a * a).scaled(4 % fp.p);                        // -4a^3c = +4a^3
  PolySparse t3 = (a * a) * (b * b);
  PolySparse t4 = (b * b * b).scaled(4 % fp.p).scaled(fp.p - 1);
  PolySparse t5 = cnst(27 % fp.p).scaled(fp.p - 1);
  return t1 + t2 + t3 + t4 + t5;
}

std::optional<EscapeWitness> escape(const ElementSet& A, const Variety& V, const GroupElement& x,
                                    int m_max, const Budget& budget) {
  if (m_max < 0) throw ConfigError("m_max must be >= 0");
  const FieldParams fp = A.params();
  if (x.params() != fp) throw ConfigError("params mismatch in escape");

  auto gens = A.symmetrized_with_identity().elements();
  CodeHashSet seen;
  Code id = GroupElement::identity(fp).encode();
  seen.insert(id);
  std::vector<Code> layer = {id};
  for (int r = 0; r <= m_max; r++) {
    // canonical order within the layer
    std::sort(layer.begin(), layer.end());
    for (Code c : layer) {
      GroupElement g = GroupElement::decode(fp, c);
      if (!V.contains(mul(g, x))) return EscapeWitness{g, r};
    }
    if (r == m_max) break;
    std::vector<Code> next;
    for (Code fc : layer) {
      GroupElement f = GroupElement::decode(fp, fc);
      for (const auto& g : gens) {
        Code c = mul(f, g).encode();
        if (seen.insert(c)) {
          if (seen.size() > budget.max_codes) throw CapError("budget exceeded in escape");
          next.push_back(c);
        }
      }
    }
    if (next.empty()) return std::nullopt;  // orbit closure stays on V
    layer = std::move(next);
  }
  return std::nullopt;
}

std::optional<EscapeWitness> escape_regss(const ElementSet& A, const GroupElement& g0, int m_max,
                                          const Budget& budget) {
  Variety V;
  V.polys.push_back(discriminant_poly(A.params()));
  return escape(A, V, g0, m_max, budget);
}

}  // namespace growthlab
