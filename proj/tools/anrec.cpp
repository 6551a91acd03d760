// Command-line front end: constants, potentials, verification suites and
// W-constraint residuals. Exit codes: 0 pass, 1 failure or internal error,
// 2 usage error.

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "anrec/combinatorics.hpp"
#include "anrec/genus0.hpp"
#include "anrec/json_io.hpp"
#include "anrec/recursion.hpp"

using namespace anrec;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string command;
  std::string suite;
  int N = -1;
  int h = -1;
  int genus = 0;
  int degree = -1;
  int trials = 100;
  std::uint64_t seed = 42;
  std::string format = "json";
  std::string out;
  int approx = -1;
  std::string tuple;
  std::string mode = "primary";
  int a = -1;
  int m = 0;
  int taper = 2;
};

const char* kPrng = "mt19937_64 seeded with --seed; a draw in [lo,hi] is lo + next() mod (hi-lo+1)";

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : gen_(seed) {}
  int operator()(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(gen_() % span);
  }

 private:
  std::mt19937_64 gen_;
};

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

std::vector<int> parse_tuple(const std::string& text) {
  std::vector<int> t;
  if (text.empty()) return t;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw UsageError("malformed tuple entry '" + item + "'");
    }
    if (used != item.size()) throw UsageError("malformed tuple entry '" + item + "'");
    t.push_back(v);
  }
  return t;
}

std::string tuple_text(const std::vector<int>& t) {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s;
}

Json config_json(const Config& c) {
  Json j = {{"command", c.command}};
  if (!c.suite.empty()) j["suite"] = c.suite;
  if (c.N >= 0) j["N"] = c.N;
  if (c.h >= 0) j["h"] = c.h;
  j["genus"] = c.genus;
  if (c.degree >= 0) j["degree"] = c.degree;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["format"] = c.format;
  if (!c.tuple.empty()) j["tuple"] = c.tuple;
  if (c.command == "potential") j["mode"] = c.mode;
  if (c.a >= 0) j["a"] = c.a;
  if (c.command == "wcheck") j["m"] = c.m;
  j["taper"] = c.taper;
  return j;
}

// Attaches config echo and a SHA-256 of the canonical dump of everything else.
Json finish_report(Json body, const Config& c) {
  Json rep = {{"config", config_json(c)}};
  for (auto it = body.begin(); it != body.end(); ++it) rep[it.key()] = it.value();
  rep["content_sha256"] = sha256_hex(rep.dump());
  return rep;
}

void emit(const Config& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw UsageError("cannot open output file " + c.out);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

std::string approx_text(const CycScalar& s, int digits) {
  const auto z = s.approx(digits);
  std::ostringstream os;
  os << std::setprecision(digits) << z.real();
  if (z.imag() != 0) os << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

int resolve_N(const Config& c, int fallback) {
  if (c.N >= 1) return c.N;
  if (c.h >= 2) return c.h - 1;
  if (c.N == 0 || c.h == 1 || c.h == 0) throw UsageError("rank must satisfy N >= 1 (h >= 2)");
  return fallback;
}

// ---------------------------------------------------------------- constants

int cmd_constants(const Config& c) {
  if (c.h < 2) throw UsageError("constants needs --h >= 2");
  const RootData rd(c.h - 1);
  const auto t = parse_tuple(c.tuple);
  for (int x : t) {
    if (x < 1 || x > rd.N()) throw UsageError("tuple entries must lie in 1.." + std::to_string(rd.N()));
  }
  const CycScalar C = c_const(rd, t);
  const CycScalar S = sym_c(rd, t);
  std::vector<int> sorted = t;
  std::sort(sorted.begin(), sorted.end());
  const bool has_bracket = !t.empty();
  const CycScalar B = has_bracket ? c_bracket(rd, sorted) : CycScalar(0);

  if (c.format == "text") {
    std::ostringstream os;
    os << "C(" << tuple_text(t) << ") = " << C.to_string() << "\n";
    os << "SymC(" << tuple_text(sorted) << ") = " << S.to_string() << "\n";
    if (has_bracket) os << "C[" << tuple_text(sorted) << "] = " << B.to_string() << "\n";
    if (c.approx > 0) {
      os << "approx C = " << approx_text(C, c.approx) << "\n";
      os << "approx SymC = " << approx_text(S, c.approx) << "\n";
      if (has_bracket) os << "approx C[.] = " << approx_text(B, c.approx) << "\n";
    }
    emit(c, os.str());
    return 0;
  }
  Json body = {{"h", c.h}, {"tuple", t}, {"C", C.to_string()}, {"C_exact", to_json(C)},
               {"SymC", S.to_string()}, {"SymC_exact", to_json(S)}};
  if (has_bracket) {
    body["C_bracket"] = B.to_string();
    body["C_bracket_exact"] = to_json(B);
  }
  if (c.approx > 0) {
    body["approx"] = {{"C", approx_text(C, c.approx)}, {"SymC", approx_text(S, c.approx)}};
    if (has_bracket) body["approx"]["C_bracket"] = approx_text(B, c.approx);
  }
  emit(c, finish_report(body, c).dump(2));
  return 0;
}

// ---------------------------------------------------------------- potential

int cmd_potential(const Config& c) {
  const int N = resolve_N(c, -1);
  if (N < 1) throw UsageError("potential needs --n (or --h)");
  if (c.degree < 0) throw UsageError("potential needs --degree >= 0");
  if (c.genus < 0) throw UsageError("--genus must be >= 0");
  if (c.mode != "primary" && c.mode != "descendant") throw UsageError("--mode must be primary or descendant");
  // higher genus always runs in descendant variables
  Config echo = c;
  if (c.genus > 0) echo.mode = "descendant";
  const RootData rd(N);

  RatPoly F0;
  Json body;
  std::ostringstream text;
  if (c.genus == 0) {
    const auto prof = c.mode == "primary" ? InputProfile::primary(N, c.degree) : InputProfile::descendant(N, c.degree);
    const PotentialG0 pot = solve(rd, prof);
    F0 = pot.F;
    body["potential"] = to_json(pot);
    if (c.mode == "descendant") body["F_t"] = to_json(x_to_t(pot.F, rd.h()));
    text << "F0 = " << pot.F.to_string() << "\n";
    for (const auto& [v, p] : pot.p) text << "p_{" << v.m << "," << v.a << "} = " << p.to_string() << "\n";
  } else {
    if (c.taper < 1) throw UsageError("--taper must be >= 1");
    SolveOptions opt;
    opt.taper = c.taper;
    const PotentialTable table = solve_all_genus(rd, c.genus, c.degree, opt);
    F0 = table.F[0];
    body["potential"] = to_json(table);
    Json ft = Json::array();
    for (const auto& f : table.F) ft.push_back(to_json(x_to_t(f, rd.h())));
    body["F_t"] = ft;
    for (int g = 0; g <= table.genus_max(); ++g) {
      text << "F" << g << " (degree <= " << table.caps[g] << ") = " << table.F[g].to_string() << "\n";
    }
    text << "constants of F^(g), g >= 2, are undetermined and stored as 0\n";
  }
  const int Dp = c.genus == 0 ? c.degree : std::max(0, genus_cap(c.degree, 0, c.taper));
  const CheckReport w = wdvv_check(F0, N, Dp);
  const CheckReport e = euler_check(F0, N);
  body["checks"] = {to_json(w), to_json(e)};
  text << "wdvv: " << (w.pass ? "pass" : "FAIL") << "\neuler: " << (e.pass ? "pass" : "FAIL") << "\n";
  const bool ok = w.pass && e.pass;
  if (c.format == "text") emit(c, text.str());
  else emit(c, finish_report(body, echo).dump(2));
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------- verify

using Results = std::vector<VerifyReport>;

VerifyReport scalar_claim(const std::string& claim, const CycScalar& lhs, const CycScalar& rhs) {
  return {claim, lhs.to_string(), rhs.to_string(), lhs == rhs};
}

std::vector<int> h_range(const Config& c, int lo, int hi) {
  if (c.h >= 0) {
    if (c.h < lo) throw UsageError("this suite needs --h >= " + std::to_string(lo));
    return {c.h};
  }
  if (c.N >= 0) {
    Config byrank;
    byrank.h = c.N + 1;
    return h_range(byrank, lo, hi);
  }
  std::vector<int> r;
  for (int h = lo; h <= hi; ++h) r.push_back(h);
  return r;
}

void suite_constants(const Config&, Results& out) {
  const RootData rd(3);
  const CycScalar eta = rd.eta(1);
  const std::vector<std::pair<std::vector<int>, CycScalar>> golden = {
      {{1, 1}, CycScalar(0)},           {{2, 2}, CycScalar(0)},
      {{1, 2}, CycScalar(frac(1, 2))},  {{2, 1}, CycScalar(frac(1, 2))},
      {{1, 3}, (eta - CycScalar(1)) * CycScalar(frac(1, 2))},
      {{3, 1}, (-eta - CycScalar(1)) * CycScalar(frac(1, 2))},
      {{1, 1, 1}, CycScalar(frac(-1, 4))}};
  for (const auto& [t, v] : golden) out.push_back(scalar_claim("C(" + tuple_text(t) + ") at h=4", c_const(rd, t), v));
}

void suite_remove_n(const Config& c, Results& out) {
  Draw draw(c.seed);
  for (int h : h_range(c, 3, 8)) {
    const RootData rd(h - 1);
    for (int trial = 0; trial < c.trials; ++trial) {
      while (true) {
        const int r = draw(1, h - 1);
        std::vector<int> b(r);
        long sum = 0;
        for (auto& x : b) {
          x = draw(1, rd.N() - 1);
          sum += x;
        }
        const int top = mod_residue(sum, h);
        int m = 0;
        switch (trial % 3) {
          case 0: m = top; break;           // boundary
          case 1: m = top + 1; break;       // vanishing regime
          default: m = draw(0, top); break;
        }
        if (r + m > h) continue;
        out.push_back(verify_remove_n(rd, b, m));
        break;
      }
    }
  }
}

void for_each_short_tuple(int maxval, int maxlen, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> t;
  const std::function<void(int)> rec = [&](int lo) {
    if (!t.empty()) fn(t);
    if (static_cast<int>(t.size()) == maxlen) return;
    for (int v = lo; v <= maxval; ++v) {
      t.push_back(v);
      rec(v);
      t.pop_back();
    }
  };
  rec(1);
}

void suite_symc_generating(const Config& c, Results& out) {
  for (int h : h_range(c, 3, 6)) {
    const RootData rd(h - 1);
    for_each_short_tuple(rd.N() - 1, 3, [&](const std::vector<int>& a) { out.push_back(verify_symc_generating(rd, a)); });
  }
}

void suite_cbracket_generating(const Config& c, Results& out) {
  for (int h : h_range(c, 3, 6)) {
    const RootData rd(h - 1);
    for_each_short_tuple(rd.N() - 1, 3,
                         [&](const std::vector<int>& a) { out.push_back(verify_cbracket_generating(rd, a)); });
  }
}

void suite_symstate(const Config& c, Results& out) {
  for (int h : h_range(c, 2, 6)) {
    const RootData rd(h - 1);
    const SymState e1 = elem_sym_state(rd, 1);
    out.push_back({"e_1 state vanishes at h=" + std::to_string(h), to_json(e1).dump(), "0", e1.is_zero()});
    for (int r = 2; r <= h; ++r) {
      const SymState lhs = cbracket_state(rd, r);
      const SymState rhs = elem_sym_state(rd, r);
      out.push_back({"bracket state equals e_" + std::to_string(r) + " at h=" + std::to_string(h), to_json(lhs).dump(),
                     to_json(rhs).dump(), lhs == rhs});
    }
  }
}

void suite_vandermonde(const Config& c, Results& out) {
  Draw draw(c.seed);
  for (int h : h_range(c, 2, 12)) {
    const RootData rd(h - 1);
    for (int trial = 0; trial < c.trials; ++trial) {
      const int r = draw(1, h);
      std::vector<int> pool(h);
      for (int i = 0; i < h; ++i) pool[i] = i + 1;
      // partial Fisher-Yates with the documented draw
      for (int i = 0; i < r; ++i) std::swap(pool[i], pool[draw(i, h - 1)]);
      std::vector<int> idx(pool.begin(), pool.begin() + r);
      std::sort(idx.begin(), idx.end());
      out.push_back(scalar_claim("Vandermonde coefficient for (" + tuple_text(idx) + ") at h=" + std::to_string(h),
                                 vandermonde_coeff(rd, idx), CycScalar(1)));
    }
  }
}

void suite_structural(const Config& c, Results& out, bool wdvv) {
  const int D = c.degree >= 0 ? c.degree : 6;
  std::vector<int> ranks;
  if (c.N >= 1 || c.h >= 2) ranks = {resolve_N(c, 3)};
  else ranks = {2, 3, 4};
  for (int N : ranks) {
    const RootData rd(N);
    const PotentialG0 pot = solve(rd, InputProfile::primary(N, D));
    const CheckReport rep = wdvv ? wdvv_check(pot) : euler_check(pot);
    std::string lhs = rep.failures.empty() ? "no violations" : rep.failures.front();
    out.push_back({rep.name + " for the A_" + std::to_string(N) + " primary potential, D=" + std::to_string(D), lhs,
                   "no violations", rep.pass});
  }
}

void suite_cross_path(const Config& c, Results& out) {
  std::vector<int> ranks;
  if (c.N >= 1 || c.h >= 2) ranks = {resolve_N(c, 1)};
  else ranks = {1, 2, 3};
  const int D = c.degree >= 0 ? c.degree : 5;
  for (int N : ranks) {
    const RootData rd(N);
    SolveOptions opt;
    opt.check_genus0 = false;
    const PotentialTable t = solve_all_genus(rd, 0, D, opt);
    const PotentialG0 ref = solve(rd, InputProfile::descendant(N, D));
    out.push_back({"genus-0 potential: all-genus solver vs residue engine, N=" + std::to_string(N) + ", D=" +
                       std::to_string(D),
                   t.F[0].to_string(), ref.F.to_string(), t.F[0] == ref.F});
  }
}

void suite_wick(const Config& c, Results& out) {
  for (int h : h_range(c, 2, 6)) {
    const RootData rd(h - 1);
    for (int r = 1; r <= h; ++r) {
      std::vector<int> J(r);
      for (int i = 0; i < r; ++i) J[i] = i + 1;
      const auto op = wick_operator(rd, J);
      out.push_back({"Wick term count for r=" + std::to_string(r) + " at h=" + std::to_string(h),
                     std::to_string(op.terms.size()), std::to_string(matching_count(r)),
                     static_cast<long>(op.terms.size()) == matching_count(r)});
    }
  }
}

void suite_kernel(const Config& c, Results& out) {
  for (int h : h_range(c, 2, 6)) {
    const RootData rd(h - 1);
    for (int a = 1; a <= rd.N(); ++a) {
      for (int m = 0; m <= 2; ++m) {
        for (int i = 1; i <= h; ++i) {
          std::vector<int> js;
          for (int j = 1; j <= h; ++j) {
            if (j != i) js.push_back(j);
          }
          const int r = static_cast<int>(js.size());
          BigInt den = 1;
          for (int k = 1; k <= m + 1; ++k) den *= (-a + k * h);
          // expected ratio: h^(m+2-a/h) / prod (-a+kh) * h^(-r/h)
          const KernelMonomial want{h, CycScalar(Rat(1) / Rat(den)), (m + 2) * h - a - r, 0};
          const KernelMonomial got = period_kernel(rd, m, a, i, js) / recursion_kernel(rd, m, a, i, js);
          const auto g = got.normalized();
          const auto w = want.normalized();
          out.push_back({"kernel ratio for m=" + std::to_string(m) + ", a=" + std::to_string(a) + ", i=" +
                             std::to_string(i) + " at h=" + std::to_string(h),
                         g.coeff.to_string() + " h^(" + std::to_string(g.h_exp) + "/h) lambda^(" +
                             std::to_string(g.lambda_exp) + "/h)",
                         w.coeff.to_string() + " h^(" + std::to_string(w.h_exp) + "/h) lambda^(" +
                             std::to_string(w.lambda_exp) + "/h)",
                         got == want});
        }
      }
    }
  }
}

void suite_w_constraints(const Config& c, Results& out) {
  const int N = resolve_N(c, 2);
  const int cap = c.degree >= 0 ? c.degree : 4;
  const int G = c.genus;
  const RootData rd(N);
  const auto caps = residual_caps(cap, G);
  SolveOptions opt;
  opt.taper = 1;
  const PotentialTable table = solve_all_genus(rd, G, caps[0], opt);
  for (int a = 1; a <= N; ++a) {
    for (int m = 0; m <= 2; ++m) {
      const WResidual w = w_residual(rd, table, a, m, cap);
      std::string lhs;
      for (std::size_t g = 0; g < w.by_genus.size(); ++g) lhs += (g ? "; " : "") + w.by_genus[g].to_string();
      out.push_back({"Res lambda^" + std::to_string(m) + " X(e_" + std::to_string(rd.h() + 1 - a) +
                         ") D = 0 up to degree " + std::to_string(cap) + ", N=" + std::to_string(N) + ", genus <= " +
                         std::to_string(G),
                     lhs, "0", w.vanishes()});
    }
  }
}

const std::map<std::string, std::function<void(const Config&, Results&)>>& suites() {
  static const std::map<std::string, std::function<void(const Config&, Results&)>> s = {
      {"constants", suite_constants},
      {"remove-n", suite_remove_n},
      {"symc-generating", suite_symc_generating},
      {"cbracket-generating", suite_cbracket_generating},
      {"symstate", suite_symstate},
      {"vandermonde", suite_vandermonde},
      {"wdvv", [](const Config& c, Results& r) { suite_structural(c, r, true); }},
      {"euler", [](const Config& c, Results& r) { suite_structural(c, r, false); }},
      {"cross-path", suite_cross_path},
      {"wick", suite_wick},
      {"kernel", suite_kernel},
      {"w-constraints", suite_w_constraints},
  };
  return s;
}

int cmd_verify(const Config& c) {
  const auto& all = suites();
  auto it = all.find(c.suite);
  if (it == all.end()) {
    std::string names;
    for (const auto& [k, v] : all) names += (names.empty() ? "" : ", ") + k;
    throw UsageError("unknown suite '" + c.suite + "' (available: " + names + ")");
  }
  if (c.trials < 0) throw UsageError("--trials must be >= 0");
  Results results;
  it->second(c, results);
  int failures = 0;
  for (const auto& r : results) failures += r.pass ? 0 : 1;

  if (c.format == "text") {
    std::ostringstream os;
    os << "suite " << c.suite << ": " << results.size() << " checks, " << failures << " failures\n";
    for (const auto& r : results) {
      if (!r.pass) os << "FAIL " << r.claim << "\n  lhs: " << r.lhs << "\n  rhs: " << r.rhs << "\n";
    }
    emit(c, os.str());
  } else {
    Json res = Json::array();
    for (const auto& r : results) res.push_back(to_json(r));
    Json body = {{"suite", c.suite}, {"prng", kPrng}, {"checks", results.size()}, {"failures", failures},
                 {"pass", failures == 0}, {"results", res}};
    emit(c, finish_report(body, c).dump(2));
  }
  return failures == 0 ? 0 : 1;
}

// ---------------------------------------------------------------- wcheck

int cmd_wcheck(const Config& c) {
  const int N = resolve_N(c, -1);
  if (N < 1) throw UsageError("wcheck needs --n (or --h)");
  const RootData rd(N);
  if (c.a < 1 || c.a > N) throw UsageError("--a must lie in 1..N");
  if (c.m < 0) throw UsageError("--m must be >= 0");
  const int cap = c.degree >= 0 ? c.degree : 4;
  if (c.genus < 0) throw UsageError("--genus must be >= 0");
  const auto caps = residual_caps(cap, c.genus);
  SolveOptions opt;
  opt.taper = 1;
  const PotentialTable table = solve_all_genus(rd, c.genus, caps[0], opt);
  const WResidual w = w_residual(rd, table, c.a, c.m, cap);
  if (c.format == "text") {
    std::ostringstream os;
    for (std::size_t g = 0; g < w.by_genus.size(); ++g) os << "genus " << g << ": " << w.by_genus[g].to_string() << "\n";
    os << (w.vanishes() ? "pass" : "FAIL") << "\n";
    emit(c, os.str());
  } else {
    Config echo = c;
    echo.taper = 1;
    emit(c, finish_report(to_json(w, N), echo).dump(2));
  }
  return w.vanishes() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact topological recursion and W-constraints for A_N singularities"};
  app.require_subcommand(1);
  // --h is the Coxeter number, so help is long-form only
  app.set_help_flag("--help", "print this help message and exit");
  Config cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.N, "rank N of A_N");
    sub->add_option("--h", cfg.h, "Coxeter number h = N+1");
    sub->add_option("--genus", cfg.genus, "genus cap G");
    sub->add_option("--degree", cfg.degree, "degree cap D");
    sub->add_option("--trials", cfg.trials, "trials per randomized family");
    sub->add_option("--seed", cfg.seed, "seed for randomized suites");
    sub->add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--out", cfg.out, "write the report to this file");
    sub->add_option("--approx", cfg.approx, "also print floating approximations with this many digits")
        ->check(CLI::Range(1, 15));
    sub->add_option("--tuple", cfg.tuple, "comma-separated index tuple (empty allowed)")->expected(0, 1);
    sub->add_option("--taper", cfg.taper, "degree taper: D_g = D - taper*g");
  };

  auto* constants = app.add_subcommand("constants", "print C, SymC and C[.] for a tuple");
  common(constants);
  auto* potential = app.add_subcommand("potential", "compute truncated potentials");
  common(potential);
  potential->add_option("--mode", cfg.mode, "primary or descendant");
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  common(verify);
  verify->add_option("suite", cfg.suite, "suite name")->required();
  auto* wcheck = app.add_subcommand("wcheck", "W-constraint residual after the dilaton shift");
  common(wcheck);
  wcheck->add_option("--a", cfg.a, "flat index a (state e_{h+1-a})")->required();
  wcheck->add_option("--m", cfg.m, "power of lambda");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*constants) {
      cfg.command = "constants";
      return cmd_constants(cfg);
    }
    if (*potential) {
      cfg.command = "potential";
      return cmd_potential(cfg);
    }
    if (*verify) {
      cfg.command = "verify";
      return cmd_verify(cfg);
    }
    cfg.command = "wcheck";
    return cmd_wcheck(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ConsistencyError& e) {
    std::cerr << "consistency check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
