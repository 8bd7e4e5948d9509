// growthlab: command-line runner for the finite-group growth experiments.
//
// Every subcommand emits a JSON run manifest (stdout, or --out) echoing its
// configuration, the RNG algorithm, wall times, and one record per asserted
// inequality. Exit codes: 0 all checks passed, 1 an assertion failed,
// 2 configuration error, 3 resource cap hit.

#include <chrono>
#include <cmath>
#include <map>
#include <sstream>
#include <fstream>
#include <iostream>
#include <set>

#include "CLI11.hpp"
#include "json.hpp"

#include "growthlab/cayley.hpp"
#include "growthlab/elemset.hpp"
#include "growthlab/families.hpp"
#include "growthlab/poly.hpp"
#include "growthlab/structure.hpp"
#include "growthlab/sumprod.hpp"
#include "growthlab/torus.hpp"

using namespace growthlab;
using nlohmann::json;

namespace {

struct Options {
  int n = 2;
  std::string p_spec = "5";
  std::uint64_t seed = 0;
  int k = -1;  // -1 = per-subcommand default
  std::uint64_t cap = 0;  // 0 = library default
  std::string out;
  std::string format = "json";
  std::string gens = "standard";
  std::string set_file;
  std::string family;
  std::string N_spec = "1";
  std::uint64_t x = 0;
  double eps = 0.0;
  std::uint64_t trials = 10;
};

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

std::vector<std::uint32_t> parse_prime_list(const std::string& spec) {
  std::vector<std::uint32_t> out;
  auto add_range = [&](const std::string& tok) {
    auto dots = tok.find("..");
    if (dots != std::string::npos) {
      std::uint64_t lo = std::stoull(tok.substr(0, dots));
      std::uint64_t hi = std::stoull(tok.substr(dots + 2));
      for (std::uint64_t v = lo; v <= hi; v++)
        if (is_prime(v)) out.push_back((std::uint32_t)v);
    } else {
      std::uint64_t v = std::stoull(tok);
      if (!is_prime(v)) throw ConfigError(tok + " is not prime");
      out.push_back((std::uint32_t)v);
    }
  };
  std::size_t pos = 0;
  while (pos < spec.size()) {
    auto comma = spec.find(',', pos);
    if (comma == std::string::npos) comma = spec.size();
    add_range(spec.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return out;
}

std::vector<std::uint64_t> parse_count_list(const std::string& spec) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  while (pos < spec.size()) {
    auto comma = spec.find(',', pos);
    if (comma == std::string::npos) comma = spec.size();
    std::string tok = spec.substr(pos, comma - pos);
    auto dots = tok.find("..");
    if (dots != std::string::npos) {
      std::uint64_t lo = std::stoull(tok.substr(0, dots));
      std::uint64_t hi = std::stoull(tok.substr(dots + 2));
      for (std::uint64_t v = lo; v <= hi; v++) out.push_back(v);
    } else {
      out.push_back(std::stoull(tok));
    }
    pos = comma + 1;
  }
  return out;
}

std::uint32_t single_prime(const Options& opt) {
  auto ps = parse_prime_list(opt.p_spec);
  if (ps.size() != 1) throw ConfigError("this subcommand takes a single prime");
  return ps[0];
}

Budget budget_of(const Options& opt) {
  Budget b = Budget::from_env();
  if (opt.cap) b.max_codes = opt.cap;
  return b;
}

ElementSet random_subset_of_group(const ElementSet& G, std::size_t count, Rng& rng) {
  if (count > G.size()) throw ConfigError("subset larger than the group");
  std::set<std::size_t> idx;
  while (idx.size() < count) idx.insert(rng.below(G.size()));
  std::vector<Code> codes;
  for (auto i : idx) codes.push_back(G.codes()[i]);
  return ElementSet(G.params(), std::move(codes));
}

ElementSet enumerate_group(const FieldParams& fp, const Budget& budget) {
  auto G = closure(ElementSet::from_elements(standard_generators(fp)), budget.max_codes);
  if (!G) throw CapError("group too large for the configured cap");
  return *G;
}

// Input set: a family, a saved set file, the standard generators, or a
// seeded random sample ("random:<count>").
ElementSet input_set(const Options& opt, Rng& rng) {
  if (!opt.set_file.empty()) return ElementSet::load(opt.set_file);
  if (!opt.family.empty()) {
    FamilySpec spec;
    spec.id = family_from_string(opt.family);
    spec.p = single_prime(opt);
    auto Ns = parse_count_list(opt.N_spec);
    if (Ns.size() != 1) throw ConfigError("family construction takes a single N");
    spec.N = Ns[0];
    spec.x = opt.x;
    spec.eps = opt.eps;
    return build_family(spec);
  }
  FieldParams fp(single_prime(opt), opt.n);
  if (opt.gens == "standard") return ElementSet::from_elements(standard_generators(fp));
  if (opt.gens.rfind("random:", 0) == 0) {
    std::size_t count = std::stoull(opt.gens.substr(7));
    std::vector<GroupElement> v;
    std::set<Code> seen;
    while (seen.size() < count) {
      auto g = random_element(fp, rng);
      if (seen.insert(g.encode()).second) v.push_back(g);
    }
    return ElementSet::from_elements(v);
  }
  throw ConfigError("unknown generator recipe: " + opt.gens + " (use standard or random:<count>)");
}

class Manifest {
 public:
  Manifest(const std::string& cmd, const Options& opt) {
    j_["tool"] = "growthlab";
    j_["version"] = kVersion;
    j_["subcommand"] = cmd;
    j_["rng"] = {{"algorithm", kRngAlgorithm}, {"seed", opt.seed}};
    j_["config"] = {{"n", opt.n},        {"p", opt.p_spec},   {"seed", opt.seed},
                    {"k", opt.k},        {"cap", opt.cap},    {"gens", opt.gens},
                    {"set_file", opt.set_file}, {"family", opt.family}, {"N", opt.N_spec},
                    {"x", opt.x},        {"eps", opt.eps},    {"trials", opt.trials},
                    {"format", opt.format}};
  }

  void check(const std::string& name, const std::string& inequality, bool pass,
             const json& detail = json::object()) {
    json c = {{"name", name}, {"inequality", inequality}, {"pass", pass}};
    if (!detail.empty()) c["detail"] = detail;
    j_["checks"].push_back(c);
    if (pass)
      passed_++;
    else
      failed_++;
  }

  void not_applicable(const std::string& name, const std::string& inequality,
                      const json& detail = json::object()) {
    json c = {{"name", name}, {"inequality", inequality}, {"status", "not_applicable"}};
    if (!detail.empty()) c["detail"] = detail;
    j_["checks"].push_back(c);
    na_++;
  }

  json& data() { return j_["data"]; }

  int finish(const Options& opt, const Timer& timer) {
    j_["summary"] = {{"passed", passed_}, {"failed", failed_}, {"not_applicable", na_}};
    j_["wall_seconds"] = timer.seconds();
    std::string text = j_.dump(2) + "\n";
    if (!opt.out.empty() && opt.format == "json") {
      std::ofstream f(opt.out);
      if (!f) throw ConfigError("cannot open " + opt.out);
      f << text;
      std::cout << "wrote " << opt.out << "\n";
    } else {
      std::cout << text;
    }
    return failed_ ? 1 : 0;
  }

  void write_csv(const Options& opt, const std::string& csv) {
    if (opt.out.empty() || opt.format != "csv") {
      std::cout << csv;
      return;
    }
    std::ofstream f(opt.out);
    if (!f) throw ConfigError("cannot open " + opt.out);
    f << csv;
  }

 private:
  json j_;
  int passed_ = 0, failed_ = 0, na_ = 0;
};

json growth_json(const GrowthReport& r) {
  return {{"size_a", r.size_a},   {"size_aa", r.size_aa}, {"size_aaa", r.size_aaa},
          {"delta", r.delta},     {"lower_bound", r.lower_bound},
          {"wall_seconds", r.wall_seconds}};
}

json sl3_flags_json(const Sl3Flags& f) {
  return {{"fixes_point", f.fixes_point},
          {"fixes_line", f.fixes_line},
          {"preserves_quadratic_form", f.preserves_quadratic_form},
          {"abelian_index_le6", f.abelian_index_le6},
          {"order_le_1080", f.order_le_1080},
          {"full_group", f.full_group},
          {"order_flags_known", f.order_flags_known},
          {"form_search_exhaustive", f.form_search_exhaustive},
          {"abelian_search_conclusive", f.abelian_search_conclusive},
          {"closure_size", f.closure_size}};
}

json sl2_flags_json(const Sl2Flags& f) {
  json j = {{"in_borel", f.in_borel},
            {"in_torus_normalizer", f.in_torus_normalizer},
            {"order_le_120", f.order_le_120},
            {"full_group", f.full_group},
            {"order_flags_known", f.order_flags_known},
            {"closure_size", f.closure_size},
            {"index", f.index}};
  if (f.galois_index_ok >= 0) j["proper_index_at_least_p_plus_1"] = f.galois_index_ok == 1;
  return j;
}

int run_growth(const Options& opt) {
  Timer timer;
  Manifest man("growth", opt);
  Rng rng(opt.seed);
  ElementSet A = input_set(opt, rng);
  auto rep = triple_stats(A, budget_of(opt));
  man.data() = growth_json(rep);
  man.check("triple_product_monotone", "|A| <= |A*A| <= |A*A*A|",
            rep.size_a <= rep.size_aa && rep.size_aa <= rep.size_aaa);
  return man.finish(opt, timer);
}

int run_ball(const Options& opt) {
  Timer timer;
  Manifest man("ball", opt);
  Rng rng(opt.seed);
  ElementSet A = input_set(opt, rng);
  auto res = ball(A, opt.k < 0 ? 3 : opt.k, budget_of(opt));
  man.data() = {{"sizes", res.profile.sizes},
                {"saturated", res.profile.saturated},
                {"saturation_radius", res.profile.saturation_radius},
                {"overflow", res.profile.overflow}};
  bool strict = true;
  for (std::size_t r = 1; r < res.profile.sizes.size(); r++) {
    bool grew = res.profile.sizes[r] > res.profile.sizes[r - 1];
    bool done = res.profile.saturated && r > res.profile.saturation_radius;
    if (!grew && !done) strict = false;
  }
  man.check("ball_strict_growth", "|A_{r+1}| >= |A_r| + 1 until saturation", strict);
  return man.finish(opt, timer);
}

int run_diameter(const Options& opt) {
  Timer timer;
  Manifest man("diameter", opt);
  Rng rng(opt.seed);
  ElementSet A = input_set(opt, rng);
  auto d = diameter(A, false, budget_of(opt));
  man.data() = {{"diameter", d.diameter},
                {"sizes", d.sizes},
                {"saturated", d.saturated},
                {"reached", d.reached},
                {"generates", d.generates},
                {"overflow", d.overflow}};
  if (d.overflow) return 3;
  man.check("bfs_layers_cover_group", "sum of layers = |<A>|", d.saturated);
  return man.finish(opt, timer);
}

int run_babai(const Options& opt) {
  Timer timer;
  Manifest man("babai-curve", opt);
  auto primes = parse_prime_list(opt.p_spec);
  std::uint64_t cap = opt.cap ? opt.cap : 20000000;
  auto rows = babai_curve(primes, opt.n, opt.gens, cap);
  man.write_csv(opt, babai_csv(rows));
  json jrows = json::array();
  for (const auto& r : rows)
    jrows.push_back({{"p", r.p},
                     {"n", r.n},
                     {"group_order", r.group_order},
                     {"diameter", r.diameter},
                     {"log_order", r.log_order},
                     {"ratio1", r.ratio1},
                     {"ratio2", r.ratio2},
                     {"skipped", r.skipped}});
  man.data() = jrows;
  man.check("rows_emitted", "one row per requested prime", rows.size() == primes.size());
  return man.finish(opt, timer);
}

int run_rastropor(const Options& opt) {
  Timer timer;
  Manifest man("rastropor", opt);
  Rng rng(opt.seed);
  FieldParams fp(single_prime(opt), opt.n);
  ElementSet G = enumerate_group(fp, budget_of(opt));
  std::size_t size = G.size() / 2 + 1;
  bool all = true;
  for (std::uint64_t t = 0; t < opt.trials; t++) {
    auto A = random_subset_of_group(G, size, rng);
    auto res = rastropor_check(A, budget_of(opt));
    all = all && res.status == CheckStatus::Pass;
  }
  man.data() = {{"trials", opt.trials}, {"subset_size", size}, {"group_order", G.size()}};
  man.check("majority_square_covers_group", "|A| > |G|/2 => A*A = G", all);
  return man.finish(opt, timer);
}

int run_np_threshold(const Options& opt) {
  Timer timer;
  Manifest man("np-threshold", opt);
  Rng rng(opt.seed);
  FieldParams fp(single_prime(opt), opt.n);
  ElementSet G = enumerate_group(fp, budget_of(opt));
  double threshold = 2.0 * std::pow((double)fp.group_order(), 1.0 - 1.0 / (3.0 * (fp.n + 1)));
  auto Ns = parse_count_list(opt.N_spec);
  if (Ns.size() != 1) throw ConfigError("this subcommand takes a single --N value");
  std::size_t size = Ns[0] > 1 ? (std::size_t)Ns[0] : (std::size_t)threshold + 16;
  if ((double)size <= threshold) {
    man.not_applicable("triple_product_covers_group", "|A| > 2|G|^{1-1/(3(n+1))} => A*A*A = G",
                       {{"threshold", threshold}, {"size", size}});
    return man.finish(opt, timer);
  }
  bool all = true;
  for (std::uint64_t t = 0; t < opt.trials; t++) {
    auto A = random_subset_of_group(G, size, rng);
    auto res = np_threshold_check(A, budget_of(opt));
    all = all && res.status == CheckStatus::Pass;
  }
  man.data() = {{"threshold", threshold}, {"subset_size", size}, {"group_order", G.size()}};
  man.check("triple_product_covers_group", "|A| > 2|G|^{1-1/(3(n+1))} => A*A*A = G", all);
  return man.finish(opt, timer);
}

int run_spectral(const Options& opt) {
  Timer timer;
  Manifest man("spectral", opt);
  Rng rng(opt.seed);
  ElementSet A = input_set(opt, rng);
  auto est = spectral_gap(A);
  man.data() = {{"lambda1", est.lambda1}, {"lambda2", est.lambda2},     {"gap", est.gap},
                {"iterations", est.iterations}, {"tolerance", est.tolerance},
                {"converged", est.converged}};
  man.check("top_eigenvalue_is_one", "lambda1 = 1 within tolerance",
            std::fabs(est.lambda1 - 1.0) < 1e-6);
  return man.finish(opt, timer);
}

int run_torus_stats(const Options& opt) {
  Timer timer;
  Manifest man("torus-stats", opt);
  Rng rng(opt.seed);
  ElementSet A = input_set(opt, rng);
  auto rep = torus_clusters(A, opt.k < 0 ? 3 : opt.k, budget_of(opt));
  json clusters = json::array();
  for (std::size_t i = 0; i < rep.clusters.size() && i < 20; i++)
    clusters.push_back({{"representative", code_to_string(rep.clusters[i].representative.encode())},
                        {"size", rep.clusters[i].members.size()}});
  man.data() = {{"ball_size", rep.ball_size},
                {"cluster_count", rep.clusters.size()},
                {"max_cluster", rep.max_cluster},
                {"largest", clusters}};
  man.check("members_commute_with_representative", "h g = g h for every member h",
            [&] {
              for (const auto& cl : rep.clusters)
                for (Code c : cl.members.codes())
                  if (!commute(GroupElement::decode(A.params(), c), cl.representative)) return false;
              return true;
            }());
  return man.finish(opt, timer);
}

int run_conjclass(const Options& opt) {
  Timer timer;
  Manifest man("conjclass", opt);
  Rng rng(opt.seed);
  ElementSet A = input_set(opt, rng);
  auto curve = conj_class_count(A, opt.k < 0 ? 3 : opt.k, budget_of(opt));
  man.data() = {{"count", curve.count}, {"per_radius", curve.per_radius}, {"overflow", curve.overflow}};
  bool monotone = true;
  for (std::size_t i = 1; i < curve.per_radius.size(); i++)
    monotone = monotone && curve.per_radius[i] >= curve.per_radius[i - 1];
  man.check("class_count_monotone", "count(k) <= count(k+1)", monotone);
  return man.finish(opt, timer);
}

int run_ostrogoth(const Options& opt) {
  Timer timer;
  Manifest man("ostrogoth", opt);
  Rng rng(opt.seed);
  FieldParams fp(single_prime(opt), opt.n);
  ElementSet G = enumerate_group(fp, budget_of(opt));
  bool all = true;
  for (std::uint64_t t = 0; t < opt.trials; t++) {
    auto A = random_subset_of_group(G, 1 + rng.below(12), rng);
    auto Ap = random_subset_of_group(G, 1 + rng.below(12), rng);
    all = all && ostrogoth_check(A, Ap).pass;
  }
  man.data() = {{"trials", opt.trials}};
  man.check("centralizer_class_bound",
            "max_g |C_G(g) n A^-1 A| * |A A' A^-1| >= |A| * |Cl_G(A')|", all);
  return man.finish(opt, timer);
}

int run_worot(const Options& opt) {
  Timer timer;
  Manifest man("worot", opt);
  auto rep = worot_fiber_scan(single_prime(opt));
  man.data() = {{"torus_size", rep.torus_size},
                {"regular_semisimple", rep.regular_semisimple},
                {"max_fiber", rep.max_fiber}};
  man.check("spectrum_fibers_bounded", "every (c(t), c(t^-1)) fiber has at most 6 elements",
            rep.max_fiber <= 6);
  man.check("cubic_identity", "I - c(t) t + c(t^-1) t^2 - t^3 = 0 for every tested t",
            rep.identity_holds);
  return man.finish(opt, timer);
}

int run_escape(const Options& opt) {
  Timer timer;
  Manifest man("escape", opt);
  Rng rng(opt.seed);
  FieldParams fp(single_prime(opt), 3);
  bool all = true;
  int max_radius = 0;
  json witnesses = json::array();
  for (std::uint64_t t = 0; t < opt.trials; t++) {
    std::vector<GroupElement> gens = {random_element(fp, rng), random_element(fp, rng)};
    auto A = ElementSet::from_elements(gens);
    auto w = escape_regss(A, GroupElement::identity(fp), opt.k < 0 ? 12 : opt.k, budget_of(opt));
    if (!w) {
      all = false;
      continue;
    }
    max_radius = std::max(max_radius, w->radius);
    if (witnesses.size() < 10)
      witnesses.push_back({{"witness", code_to_string(w->g.encode())}, {"radius", w->radius}});
  }
  man.data() = {{"trials", opt.trials}, {"max_radius", max_radius}, {"witnesses", witnesses}};
  man.check("escape_succeeds", "some g in A_m has g*x regular semisimple", all);
  return man.finish(opt, timer);
}

int run_sumprod(const Options& opt) {
  Timer timer;
  Manifest man("sumprod", opt);
  Rng rng(opt.seed);
  std::uint32_t p = single_prime(opt);
  auto Ns = parse_count_list(opt.N_spec);
  if (Ns.size() != 1) throw ConfigError("this subcommand takes a single --N value");
  std::uint64_t N = Ns[0];
  json rows = json::array();
  auto add_row = [&](const std::string& label, const RingSet& A) {
    auto s = sumprod_stats(A);
    rows.push_back({{"set", label},
                    {"size", s.size_a},
                    {"sum_size", s.sum_size},
                    {"prod_size", s.prod_size},
                    {"exponent", s.exponent}});
  };
  RingSet ap(p, 1), gp(p, 1), rnd(p, 1);
  FieldParams fp(p, 2);
  std::uint64_t gen = 0;
  for (std::uint64_t c = 2; c < p; c++)
    if (fp.mult_order(c) == p - 1) {
      gen = c;
      break;
    }
  for (std::uint64_t v = 1; v <= N && v < p; v++) {
    ap.insert(v);
    gp.insert(fp.pow(gen, v));
  }
  while (rnd.size() < std::min<std::uint64_t>(N, p)) rnd.insert(rng.below(p));
  add_row("arithmetic_progression", ap);
  add_row("geometric_progression", gp);
  add_row("random", rnd);
  man.data() = rows;
  man.check("sizes_bounded", "|A+A|, |A*A| <= min(|A|^2, p)", [&] {
    for (auto& r : rows) {
      std::uint64_t sz = r["size"], ss = r["sum_size"], ps = r["prod_size"];
      std::uint64_t cap2 = std::min<std::uint64_t>(sz * sz, p);
      if (ss > cap2 || ps > cap2 + 1) return false;  // products may hit 0
    }
    return true;
  }());
  return man.finish(opt, timer);
}

int run_gk(const Options& opt) {
  Timer timer;
  Manifest man("gk", opt);
  Rng rng(opt.seed);
  std::uint32_t p = single_prime(opt);
  bool all = true;
  for (std::uint64_t t = 0; t < opt.trials; t++) {
    RingSet A(p, 1), Y(p, 1);
    std::size_t na = 1 + rng.below(16), ny = 1 + rng.below(16);
    while (A.size() < na) A.insert(rng.below(p));
    while (Y.size() < ny) Y.insert(1 + rng.below(p - 1));
    all = all && gk_check(A, Y).pass;
  }
  man.data() = {{"trials", opt.trials}};
  man.check("sixfold_combination_bound", "|YA+YA-YA-YA+Y^2-Y^2| > min(|A||Y|, p)/2", all);
  return man.finish(opt, timer);
}

int run_forgli(const Options& opt) {
  Timer timer;
  Manifest man("forgli", opt);
  Rng rng(opt.seed);
  FieldParams fp(single_prime(opt), 3);
  bool all = true;
  for (std::uint64_t t = 0; t < opt.trials; t++) {
    std::vector<GroupElement> us;
    std::size_t na = 1 + rng.below(4);
    for (std::size_t i = 0; i < na; i++)
      us.push_back(GroupElement::from_entries(
          fp, {1, (std::uint32_t)rng.below(fp.p), (std::uint32_t)rng.below(fp.p), 0, 1,
               (std::uint32_t)rng.below(fp.p), 0, 0, 1}));
    auto A = ElementSet::from_elements(us);
    ElementSet D(fp);
    while (true) {
      std::uint64_t a = 1 + rng.below(fp.p - 1), b = 1 + rng.below(fp.p - 1);
      std::uint64_t c = fp.inv(a * b % fp.p);
      auto cand = ElementSet::from_elements({GroupElement::from_entries(
          fp, {(std::uint32_t)a, 0, 0, 0, (std::uint32_t)b, 0, 0, 0, (std::uint32_t)c})});
      if (roots_injective(cand)) {
        D = cand;
        break;
      }
    }
    all = all && forgli_check(A, D, budget_of(opt)).pass;
  }
  man.data() = {{"trials", opt.trials}};
  man.check("unipotent_torus_growth", "|(A u D)_20 n U| > |A||D||O| / (|A||D| + |O|)", all);
  return man.finish(opt, timer);
}

int run_ogrodo(const Options& opt) {
  Timer timer;
  Manifest man("ogrodo", opt);
  Rng rng(opt.seed);
  std::uint32_t p = single_prime(opt);
  bool all = true;
  std::uint64_t applicable = 0;
  for (std::uint64_t t = 0; t < opt.trials; t++) {
    if (t % 2 == 0) {
      RingSet A(p, 1), Y(p, 1);
      std::size_t na = 1 + rng.below(8), ny = 1 + rng.below(8);
      while (A.size() < na) A.insert(rng.below(p));
      while (Y.size() < ny) Y.insert(1 + rng.below(p - 1));
      auto r = ogrodo_ring_check(A, Y);
      if (r.status != CheckStatus::NotApplicable) {
        applicable++;
        all = all && r.status == CheckStatus::Pass;
      }
    } else {
      FieldParams fp(p, 3);
      std::vector<GroupElement> us = {GroupElement::from_entries(
          fp, {1, (std::uint32_t)rng.below(fp.p), (std::uint32_t)rng.below(fp.p), 0, 1,
               (std::uint32_t)rng.below(fp.p), 0, 0, 1})};
      std::vector<GroupElement> ts;
      for (int i = 0; i < 2; i++) {
        std::uint64_t a = 1 + rng.below(fp.p - 1), b = 1 + rng.below(fp.p - 1);
        std::uint64_t c = fp.inv(a * b % fp.p);
        ts.push_back(GroupElement::from_entries(
            fp, {(std::uint32_t)a, 0, 0, 0, (std::uint32_t)b, 0, 0, 0, (std::uint32_t)c}));
      }
      auto r = ogrodo_conj_check(ElementSet::from_elements(us), ElementSet::from_elements(ts),
                                 budget_of(opt));
      if (r.status != CheckStatus::NotApplicable) {
        applicable++;
        all = all && r.status == CheckStatus::Pass;
      }
    }
  }
  man.data() = {{"trials", opt.trials}, {"applicable", applicable}};
  man.check("commuting_action_growth", "|(Y_2(A))_6| > min(|A||Y|, |R|)/2", all);
  return man.finish(opt, timer);
}

int run_classify(const Options& opt) {
  Timer timer;
  Manifest man("classify", opt);
  Rng rng(opt.seed);
  ElementSet A = input_set(opt, rng);
  if (A.params().n == 3) {
    auto flags = classify_sl3(A, budget_of(opt).max_codes);
    man.data() = sl3_flags_json(flags);
    man.check("classification_complete", "a proper closure carries at least one structural flag",
              flags.full_group || flags.any_proper_flag() || !flags.order_flags_known);
  } else {
    auto flags = classify_sl2(A, budget_of(opt).max_codes);
    man.data() = sl2_flags_json(flags);
    man.check("classification_complete", "a proper closure carries a structural flag",
              flags.full_group || flags.in_borel || flags.in_torus_normalizer ||
                  flags.order_le_120 || !flags.order_flags_known);
  }
  return man.finish(opt, timer);
}

int run_betson(const Options& opt) {
  Timer timer;
  Manifest man("betson", opt);
  if (!opt.set_file.empty()) {
    auto H = ElementSet::load(opt.set_file);
    man.data() = {{"label", unipotent_type_name(betson_classify(H))}, {"order", H.size()}};
    man.check("classified", "subgroup got exactly one of the nine labels", true);
    return man.finish(opt, timer);
  }
  FieldParams fp(single_prime(opt), 3);
  if (fp.p > 7) throw ConfigError("exhaustive unipotent enumeration supports p <= 7");
  // enumerate all subgroups of the unitriangular group as closures of pairs
  std::vector<GroupElement> all;
  for (std::uint32_t x = 0; x < fp.p; x++)
    for (std::uint32_t y = 0; y < fp.p; y++)
      for (std::uint32_t z = 0; z < fp.p; z++)
        all.push_back(GroupElement::from_entries(fp, {1, x, y, 0, 1, z, 0, 0, 1}));
  std::set<std::vector<Code>> subgroups;
  for (const auto& a : all)
    for (const auto& b : all) {
      auto cl = closure(ElementSet::from_elements({a, b}), all.size() + 1);
      subgroups.insert(cl->codes());
    }
  std::map<std::string, int> counts;
  for (const auto& codes : subgroups)
    counts[unipotent_type_name(betson_classify(ElementSet(fp, codes)))]++;
  man.data() = {{"subgroups", subgroups.size()}, {"label_counts", counts}};
  man.check("every_subgroup_labeled", "each subgroup got exactly one of the nine labels", true);
  return man.finish(opt, timer);
}

int run_parabolic(const Options& opt) {
  Timer timer;
  Manifest man("parabolic", opt);
  Rng rng(opt.seed);
  FieldParams fp(single_prime(opt), 3);
  FieldParams fp2(fp.p, 2);
  bool all = true;
  for (std::uint64_t t = 0; t < opt.trials; t++) {
    std::uint64_t s = 1 + rng.below(fp.p - 1);
    std::uint64_t s2 = s * s % fp.p, si = fp.inv(s);
    auto m = random_element(fp2, rng);
    auto g = GroupElement::from_entries(
        fp, {(std::uint32_t)(m.at(0, 0) * si % fp.p), (std::uint32_t)(m.at(0, 1) * si % fp.p),
             (std::uint32_t)rng.below(fp.p), (std::uint32_t)(m.at(1, 0) * si % fp.p),
             (std::uint32_t)(m.at(1, 1) * si % fp.p), (std::uint32_t)rng.below(fp.p), 0, 0,
             (std::uint32_t)s2});
    auto parts = parabolic_decompose(g);
    auto re = GroupElement::from_entries(
        fp, {parts.pi_plus.at(0, 0), parts.pi_plus.at(0, 1), parts.e, parts.pi_plus.at(1, 0),
             parts.pi_plus.at(1, 1), parts.f, 0, 0, parts.pi_plus.at(2, 2)});
    all = all && re == g && parts.pi_one.det() == 1;
  }
  man.data() = {{"trials", opt.trials}};
  man.check("block_reassembly", "projections reassemble to the element; pi_1 lands in SL2", all);
  return man.finish(opt, timer);
}

int run_factorize(const Options& opt) {
  Timer timer;
  Manifest man("factorize", opt);
  Rng rng(opt.seed);
  FieldParams fp(single_prime(opt), 3);
  bool all = true;
  for (std::uint64_t t = 0; t < opt.trials; t++) {
    auto g = random_element(fp, rng);
    auto f = u1u2_factorize(g);
    all = all && mul(mul(mul(f.u1, f.u2), f.u1p), f.u2p) == g;
  }
  man.data() = {{"trials", opt.trials}};
  man.check("four_factor_product", "u1 * u2 * u1' * u2' = g with unitriangular factors", all);
  return man.finish(opt, timer);
}

int run_family(const Options& opt) {
  Timer timer;
  Manifest man("family", opt);
  FamilySpec spec;
  spec.id = family_from_string(opt.family);
  spec.p = single_prime(opt);
  auto Ns = parse_count_list(opt.N_spec);
  if (Ns.size() != 1) throw ConfigError("family construction takes a single N");
  spec.N = Ns[0];
  spec.x = opt.x;
  spec.eps = opt.eps;
  auto A = build_family(spec);
  if (!opt.out.empty() && opt.format != "json") A.save(opt.out);
  man.data() = {{"family", family_name(spec.id)},
                {"size", A.size()},
                {"closed_form", family_size_formula(spec)}};
  man.check("closed_form_size", "|A| matches the family's closed form",
            A.size() == family_size_formula(spec));
  return man.finish(opt, timer);
}

int run_sweep(const Options& opt) {
  Timer timer;
  Manifest man("sweep", opt);
  std::ostringstream csv;
  bool all = true;
  if (!opt.family.empty()) {
    csv << "family,p,N,x,eps,size,closed_form,size_aa,size_aaa,delta,bound,pass\n";
    auto primes = parse_prime_list(opt.p_spec);
    auto Ns = parse_count_list(opt.N_spec);
    json rows = json::array();
    for (auto p : primes)
      for (auto N : Ns) {
        FamilySpec spec;
        spec.id = family_from_string(opt.family);
        spec.p = p;
        spec.N = N;
        spec.x = opt.x;
        spec.eps = opt.eps;
        auto reg = family_regression(spec, budget_of(opt));
        all = all && reg.pass;
        csv << family_name(spec.id) << "," << p << "," << N << "," << spec.x << "," << spec.eps
            << "," << reg.growth.size_a << "," << family_size_formula(spec) << ","
            << reg.growth.size_aa << "," << reg.growth.size_aaa << "," << reg.growth.delta << ","
            << reg.bound_value << "," << (reg.pass ? 1 : 0) << "\n";
        rows.push_back({{"p", p},
                        {"N", N},
                        {"size", reg.growth.size_a},
                        {"size_aaa", reg.growth.size_aaa},
                        {"bound", reg.bound},
                        {"pass", reg.pass}});
      }
    man.data() = rows;
    man.check("family_growth_bounds", "every family bound holds on the grid", all);
  } else {
    auto primes = parse_prime_list(opt.p_spec);
    std::uint64_t cap = opt.cap ? opt.cap : 20000000;
    auto rows = babai_curve(primes, opt.n, opt.gens, cap);
    csv << babai_csv(rows);
    man.check("rows_emitted", "one row per grid point", rows.size() == primes.size());
  }
  man.write_csv(opt, csv.str());
  return man.finish(opt, timer);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"growthlab: exact growth experiments in SL_2(F_p) and SL_3(F_p)"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--n", opt.n, "matrix dimension (2 or 3)");
    sub->add_option("--p", opt.p_spec, "prime, list, or range (5,7 or 5..101)");
    sub->add_option("--seed", opt.seed, "RNG seed");
    sub->add_option("--k", opt.k, "radius / ball parameter");
    sub->add_option("--cap", opt.cap, "memory cap in codes (0 = default)");
    sub->add_option("--out", opt.out, "output file");
    sub->add_option("--format", opt.format, "json|csv");
    sub->add_option("--gens", opt.gens, "standard | random:<count>");
    sub->add_option("--set-file", opt.set_file, "element set file");
    sub->add_option("--family", opt.family, "family id");
    sub->add_option("--N", opt.N_spec, "family size parameter (value, list, or range)");
    sub->add_option("--x", opt.x, "generator of F_p^* (0 = least)");
    sub->add_option("--eps", opt.eps, "epsilon parameter");
    sub->add_option("--trials", opt.trials, "number of random trials");
  };

  struct Cmd {
    const char* name;
    int (*fn)(const Options&);
  };
  const Cmd cmds[] = {
      {"growth", run_growth},       {"ball", run_ball},
      {"diameter", run_diameter},   {"babai-curve", run_babai},
      {"rastropor", run_rastropor}, {"np-threshold", run_np_threshold},
      {"spectral", run_spectral},   {"torus-stats", run_torus_stats},
      {"conjclass", run_conjclass}, {"ostrogoth", run_ostrogoth},
      {"worot", run_worot},         {"escape", run_escape},
      {"sumprod", run_sumprod},     {"gk", run_gk},
      {"forgli", run_forgli},       {"ogrodo", run_ogrodo},
      {"classify", run_classify},   {"betson", run_betson},
      {"parabolic", run_parabolic}, {"factorize", run_factorize},
      {"family", run_family},       {"sweep", run_sweep},
  };
  std::map<std::string, int (*)(const Options&)> dispatch;
  for (const auto& c : cmds) {
    auto* sub = app.add_subcommand(c.name);
    add_common(sub);
    dispatch[c.name] = c.fn;
  }

  CLI11_PARSE(app, argc, argv);

  try {
    for (auto* sub : app.get_subcommands()) return dispatch[sub->get_name()](opt);
  } catch (const CapError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
