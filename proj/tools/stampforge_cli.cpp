// stampforge: construct, verify, decompose, solve, and benchmark additive
// h-fold bases of [1, n] and of cyclic groups.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stampforge/bounds.hpp"
#include "stampforge/constructions.hpp"
#include "stampforge/cyclic.hpp"
#include "stampforge/records.hpp"
#include "stampforge/solver.hpp"
#include "stampforge/sumsets.hpp"

namespace sf = stampforge;
using sf::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;

std::string fmt6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

sf::ordered_json lift_params_json(const sf::LiftRecord& rec) {
  ordered_json p;
  p["b"] = rec.cyclic.modulus;
  p["k"] = rec.cyclic.order;
  p["g"] = rec.g;
  p["m"] = rec.m;
  p["t"] = rec.t;
  p["cyclic_elements"] = rec.cyclic.residues;
  p["interval_elements"] = rec.interval;
  p["range_hi"] = rec.range_hi;
  return p;
}

sf::LiftRecord lift_record_from_params(const ordered_json& p) {
  sf::CyclicBasis cyc(p.at("cyclic_elements").get<std::vector<long long>>(),
                      p.at("b").get<long long>(), p.at("k").get<int>());
  return sf::lift_basis(cyc,
                        p.at("interval_elements").get<std::vector<long long>>(),
                        p.at("g").get<int>(), p.at("m").get<long long>(),
                        p.at("t").get<int>());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::vector<long long> parse_element_list(const std::string& text) {
  // Accepts a JSON array, a BasisRecord, or whitespace/comma separated ints.
  std::string t = text;
  auto first = t.find_first_not_of(" \t\r\n");
  if (first == std::string::npos)
    throw std::invalid_argument("empty basis input");
  if (t[first] == '[') return ordered_json::parse(t).get<std::vector<long long>>();
  if (t[first] == '{') {
    auto rec = sf::parse_record(t);
    return rec.elements;
  }
  std::vector<long long> out;
  for (char& c : t)
    if (c == ',') c = ' ';
  std::istringstream in(t);
  long long x;
  while (in >> x) out.push_back(x);
  if (!in.eof()) throw std::invalid_argument("malformed integer list");
  if (out.empty()) throw std::invalid_argument("empty basis input");
  return out;
}

std::vector<long long> parse_grid(const std::string& spec) {
  // "1e3..1e6" = decades; otherwise comma-separated values ("1e4" allowed).
  auto parse_one = [](const std::string& s) -> long long {
    return static_cast<long long>(std::stod(s));
  };
  std::vector<long long> out;
  auto dots = spec.find("..");
  if (dots != std::string::npos) {
    long long lo = parse_one(spec.substr(0, dots));
    long long hi = parse_one(spec.substr(dots + 2));
    for (long long n = lo; n <= hi; n *= 10) out.push_back(n);
    return out;
  }
  std::istringstream in(spec);
  std::string tok;
  while (std::getline(in, tok, ',')) out.push_back(parse_one(tok));
  return out;
}

std::vector<int> parse_int_list(const std::string& spec) {
  std::vector<int> out;
  std::istringstream in(spec);
  std::string tok;
  while (std::getline(in, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

ordered_json coverage_json(const sf::CoverageReport& rep) {
  ordered_json j;
  j["is_basis"] = rep.is_basis;
  j["lo"] = rep.lo;
  j["hi"] = rep.hi;
  j["order"] = rep.h;
  ordered_json unc = ordered_json::array();
  for (std::size_t i = 0; i < rep.uncovered.size() && i < 100; ++i)
    unc.push_back(rep.uncovered[i]);
  j["uncovered_count"] = rep.uncovered.size();
  j["uncovered"] = unc;
  return j;
}

sf::BasisRecord make_record(const std::string& kind, ordered_json params,
                            const std::vector<long long>& elements, int order,
                            bool verified, ordered_json ledger) {
  sf::BasisRecord rec;
  rec.kind = kind;
  rec.params = std::move(params);
  rec.elements = elements;
  rec.size = static_cast<long long>(elements.size());
  rec.order = order;
  rec.verified = verified;
  rec.created_at = sf::record_timestamp();
  rec.size_ledger = std::move(ledger);
  return rec;
}

int cmd_construct(const std::string& method, long long n, int h,
                  long long budget, unsigned seed, const std::string& out_path,
                  const ordered_json& lift_params) {
  sf::BasisRecord rec;
  if (method == "trivial") {
    auto basis = sf::trivial_basis(n, h);
    bool ok = sf::coverage(basis).is_basis;
    ordered_json params{{"n", n}, {"h", h}};
    rec = make_record("trivial", params, basis.elements, h, ok,
                      ordered_json{{"actual", basis.elements.size()}});
  } else if (method == "jia-shen") {
    auto js = sf::jia_shen_basis(n, h, budget, seed);
    bool ok = sf::coverage_range(js.basis.elements, h, 1, n).is_basis;
    ordered_json params{{"n", n},        {"h", h},        {"u", js.params.u},
                        {"v", js.params.v}, {"t", js.params.t}, {"g", js.params.g},
                        {"b", js.params.b}, {"m", js.params.m}, {"seed", seed},
                        {"budget", budget}};
    ordered_json ledger{{"cyclic_size", js.ledger.cyclic_size},
                        {"levels", js.ledger.levels},
                        {"interval_size", js.ledger.interval_size},
                        {"total_bound", js.ledger.total_bound},
                        {"actual", js.ledger.actual_size},
                        {"fallback_trivial", js.fallback_trivial}};
    if (js.lift) params["lift"] = lift_params_json(*js.lift);
    rec = make_record(js.fallback_trivial ? "trivial" : "jia_shen", params,
                      js.basis.elements, h, ok, ledger);
  } else if (method == "lift") {
    auto lifted = lift_record_from_params(lift_params);
    bool ok = sf::coverage_range(lifted.elements, lifted.order, 1,
                                 lifted.range_hi)
                  .is_basis;
    ordered_json params = lift_params_json(lifted);
    rec = make_record("lift", params, lifted.elements, lifted.order, ok,
                      ordered_json{{"total_bound", lifted.size_bound},
                                   {"actual", lifted.elements.size()}});
  } else {
    std::cerr << "unknown method: " << method << "\n";
    return kExitUsage;
  }

  std::string text = sf::serialize_record(rec);
  if (!out_path.empty()) {
    std::string path = rec.verified ? out_path : out_path + ".quarantine";
    write_text_file(path, text);
    std::cerr << (rec.verified ? "wrote " : "verification FAILED, wrote ")
              << path << "\n";
  }
  std::cout << text;
  return rec.verified ? kExitOk : kExitNegative;
}

int cmd_verify(const std::string& path, long long n, int h) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot read " << path << "\n";
    return kExitUsage;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  std::vector<long long> elements;
  try {
    elements = parse_element_list(ss.str());
  } catch (const std::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  }
  auto rep = sf::coverage_range(elements, h, 1, n);
  std::cout << coverage_json(rep).dump(2) << "\n";
  return rep.is_basis ? kExitOk : kExitNegative;
}

int cmd_decompose(const std::string& record_path, long long target) {
  std::ifstream in(record_path);
  if (!in) {
    std::cerr << "cannot read " << record_path << "\n";
    return kExitUsage;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  auto rec = sf::parse_record(ss.str());
  const ordered_json& p =
      rec.params.contains("lift") ? rec.params.at("lift") : rec.params;
  auto lifted = lift_record_from_params(p);
  auto cert = sf::decompose(lifted, target);
  ordered_json j;
  j["target"] = cert.target;
  j["summands"] = cert.summands;
  j["order_used"] = cert.order_used;
  j["order_bound"] = lifted.order;
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_solve(long long n, int h, const std::string& mode,
              const std::string& cache_path) {
  sf::SearchStats stats;
  if (mode == "oracle") {
    stats = sf::oracle_min_basis(n, h);
  } else {
    stats = sf::exact_min_basis(sf::SearchConfig{n, h, -1});
  }
  ordered_json j;
  j["n"] = n;
  j["h"] = h;
  j["mode"] = mode;
  j["optimum_size"] = stats.optimum_size;
  j["optimal"] = stats.optimal;
  j["nodes_expanded"] = stats.nodes_expanded;
  if (stats.witness) j["witness"] = stats.witness->elements;
  std::cout << j.dump(2) << "\n";
  if (stats.witness && stats.optimal && !cache_path.empty()) {
    sf::BasisCache cache(cache_path);
    auto rec = make_record("exact_witness", ordered_json{{"n", n}, {"h", h}},
                           stats.witness->elements, h, true,
                           ordered_json{{"actual", stats.witness->elements.size()}});
    cache.put(sf::BasisCache::key_of(n, h), rec);
  }
  return kExitOk;
}

int cmd_reach(int k, int h) {
  auto res = sf::extremal_reach(k, h);
  ordered_json j;
  j["k"] = k;
  j["h"] = h;
  j["n"] = res.n;
  j["witness"] = res.witness.elements;
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_bounds(int h, long long n, double eps) {
  auto r = sf::bound_report(h, n, eps);
  ordered_json j;
  j["h"] = r.h;
  j["n"] = r.n;
  j["trivial_lower"] = fmt6(r.trivial_lower);
  j["counting_lower_exact"] = r.counting_lower_exact;
  j["trivial_upper"] = fmt6(r.trivial_upper);
  if (r.mpr_lower) j["mpr_lower"] = fmt6(*r.mpr_lower);
  j["yu_lower"] = fmt6(r.yu_lower);
  j["new_lower"] = fmt6(r.new_lower);
  j["new_lower_epsilon"] = fmt6(r.new_lower_epsilon);
  j["new_upper"] = fmt6(r.new_upper);
  j["new_upper_asymptotic"] = r.new_upper_asymptotic;
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_cyclic(long long u, long long v, long long budget, unsigned seed) {
  auto res = sf::cyclic_two_basis(u, v, budget, seed);
  ordered_json j;
  j["u"] = u;
  j["v"] = v;
  j["b"] = res.basis.modulus;
  j["target"] = res.target;
  j["size"] = res.basis.residues.size();
  j["target_met"] = res.target_met;
  j["exhaustive_optimum"] = res.exhaustive;
  j["baseline_size"] = res.baseline_size;
  j["elements"] = res.basis.residues;
  std::cout << j.dump(2) << "\n";
  return res.target_met ? kExitOk : kExitNegative;
}

int cmd_sweep(const std::string& h_spec, const std::string& n_spec,
              const std::string& methods_spec, const std::string& csv_path,
              long long budget, unsigned seed) {
  auto hs = parse_int_list(h_spec);
  auto ns = parse_grid(n_spec);
  std::vector<std::string> methods;
  {
    std::istringstream in(methods_spec);
    std::string tok;
    while (std::getline(in, tok, ',')) methods.push_back(tok);
    std::sort(methods.begin(), methods.end());
  }
  std::ostringstream csv;
  csv << "h,n,method,size,normalized,ratio_power,trivial_upper,"
         "new_upper_main_term,counting_lower_exact,elapsed_ms\n";
  bool any_ok = false;
  for (int h : hs)
    for (long long n : ns)
      for (const auto& method : methods) {
        auto t0 = std::chrono::steady_clock::now();
        try {
          std::vector<long long> elements;
          if (method == "trivial") {
            elements = sf::trivial_basis(n, h).elements;
          } else if (method == "jia-shen") {
            elements = sf::jia_shen_basis(n, h, budget, seed).basis.elements;
          } else {
            throw std::invalid_argument("unknown method " + method);
          }
          double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
          auto br = sf::bound_report(h, n);
          double size = static_cast<double>(elements.size());
          double nr = std::pow(static_cast<double>(n), 1.0 / h);
          csv << h << ',' << n << ',' << method << ','
              << elements.size() << ',' << fmt6(size / nr) << ','
              << fmt6(std::pow(size, h) / static_cast<double>(n)) << ','
              << fmt6(br.trivial_upper) << ',' << fmt6(br.new_upper) << ','
              << br.counting_lower_exact << ',' << fmt6(ms) << "\n";
          any_ok = true;
        } catch (const std::exception& e) {
          csv << h << ',' << n << ',' << method << ",error,error,error,error,"
              << "error,error,error\n";
          std::cerr << "sweep row (" << h << ", " << n << ", " << method
                    << ") failed: " << e.what() << "\n";
        }
      }
  if (csv_path.empty())
    std::cout << csv.str();
  else
    write_text_file(csv_path, csv.str());
  return any_ok ? kExitOk : kExitNegative;
}

int cmd_cache(const std::string& op, const std::string& cache_flag,
              long long n, int h, const std::string& file) {
  sf::BasisCache cache(sf::BasisCache::resolve_path(cache_flag));
  if (op == "get") {
    auto rec = cache.get(sf::BasisCache::key_of(n, h));
    if (!rec) {
      std::cerr << "no cache entry for n=" << n << ", h=" << h << "\n";
      return kExitNegative;
    }
    std::cout << sf::serialize_record(*rec);
    return kExitOk;
  }
  if (op == "put") {
    std::ifstream in(file);
    if (!in) {
      std::cerr << "cannot read " << file << "\n";
      return kExitUsage;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    auto rec = sf::parse_record(ss.str());
    long long rn = rec.params.value("n", static_cast<long long>(0));
    bool stored = cache.put(sf::BasisCache::key_of(rn, rec.order), rec);
    std::cout << (stored ? "stored\n" : "kept existing smaller entry\n");
    return kExitOk;
  }
  std::cerr << "unknown cache op: " << op << "\n";
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"additive h-fold basis toolkit"};
  app.require_subcommand(1);
  // --h is an option on most subcommands, so help is --help only.
  app.set_help_flag("--help", "print help");

  std::string method = "trivial", out_path, basis_path, record_path;
  std::string mode = "exact", h_spec = "2", n_spec = "100", methods_spec = "trivial";
  std::string csv_path, cache_flag, cache_op, cache_file;
  long long n = 100, target = 1, u = 1, v = 1, budget = 10'000'000'000;
  int h = 2, k = 1;
  unsigned seed = 1;
  double eps = 0.0;

  auto* construct = app.add_subcommand("construct", "build a verified basis");
  construct->add_option("--method", method, "trivial | jia-shen | lift");
  construct->add_option("--n", n);
  construct->add_option("--h", h);
  construct->add_option("--budget", budget);
  construct->add_option("--seed", seed);
  construct->add_option("--out", out_path);
  std::string lift_json;
  construct->add_option("--lift-params", lift_json,
                        "JSON with b,k,g,m,t,cyclic_elements,interval_elements");

  auto* verify = app.add_subcommand("verify", "check a basis file against (n, h)");
  verify->add_option("--basis", basis_path)->required();
  verify->add_option("--n", n);
  verify->add_option("--h", h);

  auto* decomp = app.add_subcommand("decompose", "certificate for one target");
  decomp->add_option("--record", record_path)->required();
  decomp->add_option("--target", target)->required();

  auto* solve = app.add_subcommand("solve", "exact F_h(n) on desk-scale instances");
  solve->add_option("--n", n);
  solve->add_option("--h", h);
  solve->add_option("--mode", mode, "exact | oracle");
  solve->add_option("--cache", cache_flag);

  auto* reach = app.add_subcommand("reach", "largest n coverable with k elements");
  reach->add_option("--k", k);
  reach->add_option("--h", h);

  auto* bounds = app.add_subcommand("bounds", "bound report for (h, n)");
  bounds->add_option("--h", h);
  bounds->add_option("--n", n);
  bounds->add_option("--epsilon", eps);

  auto* cyclic = app.add_subcommand("cyclic", "2-fold basis of Z/bZ, b=(3u^2+3u+1)v^2");
  cyclic->add_option("--u", u);
  cyclic->add_option("--v", v);
  cyclic->add_option("--budget", budget);
  cyclic->add_option("--seed", seed);

  auto* sweep = app.add_subcommand("sweep", "CSV benchmark over (h, n, method)");
  sweep->add_option("--h", h_spec);
  sweep->add_option("--n", n_spec);
  sweep->add_option("--methods", methods_spec);
  sweep->add_option("--out", csv_path);
  sweep->add_option("--budget", budget);
  sweep->add_option("--seed", seed);

  auto* cache = app.add_subcommand("cache", "best-known-basis cache");
  cache->add_option("op", cache_op, "get | put")->required();
  cache->add_option("--cache", cache_flag);
  cache->add_option("--n", n);
  cache->add_option("--h", h);
  cache->add_option("--file", cache_file);

  for (auto* sub : app.get_subcommands(nullptr))
    sub->set_help_flag("--help", "print help");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*construct) {
      ordered_json lp = lift_json.empty() ? ordered_json::object()
                                          : ordered_json::parse(lift_json);
      return cmd_construct(method, n, h, budget, seed, out_path, lp);
    }
    if (*verify) return cmd_verify(basis_path, n, h);
    if (*decomp) return cmd_decompose(record_path, target);
    if (*solve) return cmd_solve(n, h, mode, cache_flag);
    if (*reach) return cmd_reach(k, h);
    if (*bounds) return cmd_bounds(h, n, eps);
    if (*cyclic) return cmd_cyclic(u, v, budget, seed);
    if (*sweep)
      return cmd_sweep(h_spec, n_spec, methods_spec, csv_path, budget, seed);
    if (*cache) return cmd_cache(cache_op, cache_flag, n, h, cache_file);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
