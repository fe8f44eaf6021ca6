// dmiso command-line front end; talks to the library only through dmiso.h.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "dmiso/dmiso.h"

namespace {

struct Options {
  int64_t prec_z = 8;
  int64_t prec_tau = 16;
  int64_t ext_max = 8;
  int64_t max_iters = 32;
  uint64_t seed = 0;
  std::vector<int64_t> zeta_window{-8, 8};
  unsigned jobs = 1;
  std::string format = "json";
  std::string output;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Inline JSON when the argument starts like a JSON value, a file path otherwise.
std::string json_arg(const std::string& s) {
  auto p = s.find_first_not_of(" \t\r\n");
  if (p != std::string::npos && (s[p] == '{' || s[p] == '[')) return s;
  return read_file(s);
}

std::string policy_text(const Options& o) {
  std::ostringstream ss;
  ss << "{\"z_prec\":" << o.prec_z << ",\"zeta_window\":[" << o.zeta_window.at(0) << "," << o.zeta_window.at(1)
     << "],\"tauinv_prec\":" << o.prec_tau << ",\"ext_max\":" << o.ext_max << ",\"purity_max_iters\":" << o.max_iters
     << ",\"seed\":" << o.seed << "}";
  return ss.str();
}

struct ContextDeleter {
  void operator()(dmiso_context* c) const { dmiso_context_free(c); }
};
struct ResultDeleter {
  void operator()(dmiso_result* r) const { dmiso_result_free(r); }
};

int emit(dmiso_status st, dmiso_result* raw, const dmiso_context* ctx, const Options& o) {
  std::unique_ptr<dmiso_result, ResultDeleter> res(raw);
  if (!res) {
    std::cerr << "dmiso: " << dmiso_last_error(ctx) << "\n";
    return st;
  }
  const char* text = o.format == "md" ? dmiso_result_markdown(res.get()) : dmiso_result_json(res.get());
  if (o.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(o.output, std::ios::binary);
    if (!out) {
      std::cerr << "dmiso: cannot write " << o.output << "\n";
      return DMISO_ERR_INPUT;
    }
    out << text;
  }
  return st;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"dmiso: isocrystals and Drinfeld modules over function fields"};
  app.set_version_flag("--version", std::string(dmiso_version()));
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--prec-z", o.prec_z, "z-precision")->check(CLI::PositiveNumber);
  app.add_option("--prec-tau", o.prec_tau, "tau^{-1}-precision")->check(CLI::PositiveNumber);
  app.add_option("--ext-max", o.ext_max, "largest extension degree searched")->check(CLI::PositiveNumber);
  app.add_option("--max-iters", o.max_iters, "purity iteration limit")->check(CLI::PositiveNumber);
  app.add_option("--zeta-window", o.zeta_window, "zeta-exponent window lo hi")->expected(2);
  app.add_option("--seed", o.seed, "seed for randomized checks");
  app.add_option("--jobs", o.jobs, "worker threads for corpus runs")->check(CLI::PositiveNumber);
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "md"}));
  app.add_option("-o,--output", o.output, "write the report to a file");

  std::string input;
  auto* analyze = app.add_subcommand("analyze", "analyze a Drinfeld module");
  analyze->add_option("--input", input, "Drinfeld module JSON")->required();

  auto* iso = app.add_subcommand("isocrystal", "isocrystal operations");
  iso->require_subcommand(1);
  std::vector<std::string> iso_inputs;
  std::string slope = "0/1";
  auto* tensor = iso->add_subcommand("tensor", "tensor product and slope identity");
  tensor->add_option("--input", iso_inputs, "two isocrystal JSON files")->required()->expected(2);
  auto* dual = iso->add_subcommand("dual", "dual isocrystal");
  dual->add_option("--input", iso_inputs, "isocrystal JSON")->required()->expected(1);
  auto* purity = iso->add_subcommand("purity", "purity certificate at slope s/r");
  purity->add_option("--input", iso_inputs, "isocrystal JSON")->required()->expected(1);
  purity->add_option("--slope", slope, "slope as s/r")->required();
  auto* slopes = iso->add_subcommand("slopes", "Newton slopes over a finite field");
  slopes->add_option("--input", iso_inputs, "isocrystal JSON")->required()->expected(1);
  auto* iso_tate = iso->add_subcommand("tate", "slope-0 Tate module");
  iso_tate->add_option("--input", iso_inputs, "isocrystal JSON")->required()->expected(1);
  iso_tate->add_option("--zprec", o.prec_z, "z-precision N")->check(CLI::PositiveNumber);
  iso_tate->add_option("--ext-max", o.ext_max, "largest extension degree")->check(CLI::PositiveNumber);

  std::string a_arg, b_arg, ring = "BK";
  int64_t solve_prec = 0;
  auto* solve = app.add_subcommand("solve", "solve sigma(x) = a x + b");
  std::string solve_doc;
  auto* a_opt = solve->add_option("--a", a_arg, "series a (JSON or file)");
  solve->add_option("--b", b_arg, "series b (JSON or file); zero when omitted");
  auto* doc_opt = solve->add_option("--input", solve_doc, "solve document with base, a, b and optionally ring, N");
  doc_opt->excludes(a_opt);
  auto* ring_opt = solve->add_option("--ring", ring, "AK, BOK, Bbar or BK")->check(CLI::IsMember({"AK", "BOK", "Bbar", "BK"}));
  solve->add_option("--prec", solve_prec, "z-precision N")->check(CLI::PositiveNumber);

  auto* tate = app.add_subcommand("tate", "slope-0 Tate module");
  tate->add_option("--input", input, "isocrystal JSON")->required();
  tate->add_option("--zprec", o.prec_z, "z-precision N")->check(CLI::PositiveNumber);
  tate->add_option("--ext-max", o.ext_max, "largest extension degree")->check(CLI::PositiveNumber);

  auto* weil = app.add_subcommand("weil", "Weil-representation valuations");
  weil->add_option("--input", input, "Drinfeld module JSON over a finite field")->required();
  weil->add_option("--tau-prec", o.prec_tau, "tau^{-1}-precision")->check(CLI::PositiveNumber);
  weil->add_option("--ext-max", o.ext_max, "largest extension degree")->check(CLI::PositiveNumber);

  std::string dir;
  auto* corpus = app.add_subcommand("corpus", "run every *.json item of a directory");
  corpus->add_option("dir", dir, "corpus directory")->required();
  corpus->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "replay the certificates of a report");
  verify->add_option("--input", input, "report JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : DMISO_ERR_INPUT;
  }
  if (o.zeta_window.size() != 2 || o.zeta_window[0] >= o.zeta_window[1]) {
    std::cerr << "dmiso: --zeta-window needs lo < hi\n";
    return DMISO_ERR_INPUT;
  }

  dmiso_context* raw_ctx = nullptr;
  std::string pol = policy_text(o);
  dmiso_status st = dmiso_context_new(pol.c_str(), &raw_ctx);
  std::unique_ptr<dmiso_context, ContextDeleter> ctx(raw_ctx);
  if (st != DMISO_OK) {
    std::cerr << "dmiso: " << (ctx ? dmiso_last_error(ctx.get()) : "cannot create context") << "\n";
    return st;
  }

  try {
    dmiso_result* res = nullptr;
    if (*analyze) {
      std::string doc = read_file(input);
      st = dmiso_analyze(ctx.get(), doc.c_str(), &res);
    } else if (*iso) {
      std::vector<std::string> docs;
      for (const auto& p : iso_inputs) docs.push_back(read_file(p));
      std::vector<const char*> ptrs;
      for (const auto& d : docs) ptrs.push_back(d.c_str());
      std::string sub = (*tensor) ? "tensor" : (*dual) ? "dual" : (*purity) ? "purity" : (*slopes) ? "slopes" : "tate";
      int64_t s = 0, r = 1;
      if (*purity) {
        auto slash = slope.find('/');
        try {
          s = std::stoll(slope.substr(0, slash));
          r = slash == std::string::npos ? 1 : std::stoll(slope.substr(slash + 1));
        } catch (const std::logic_error&) {
          std::cerr << "dmiso: malformed --slope " << slope << "\n";
          return DMISO_ERR_INPUT;
        }
      }
      st =dmiso_isocrystal(ctx.get(), sub.c_str(), ptrs.data(), ptrs.size(), s, r, &res);
    } else if (*solve) {
      if (!solve_doc.empty()) {
        auto d = nlohmann::json::parse(read_file(solve_doc));
        if (!d.is_object() || !d.contains("a")) throw std::runtime_error("solve document needs \"a\"");
        auto a = d.at("a");
        if (d.contains("base") && a.is_object() && !a.contains("base")) a["base"] = d.at("base");
        a_arg = a.dump();
        if (b_arg.empty() && d.contains("b")) b_arg = d.at("b").dump();
        if (ring_opt->count() == 0 && d.contains("ring")) ring = d.at("ring").get<std::string>();
        if (solve_prec == 0 && d.contains("N")) solve_prec = d.at("N").get<int64_t>();
      }
      if (a_arg.empty()) throw std::runtime_error("solve needs --a or --input");
      std::string a = json_arg(a_arg);
      std::string b = b_arg.empty() ? std::string() : json_arg(b_arg);
      st = dmiso_solve(ctx.get(), a.c_str(), b.empty() ? nullptr : b.c_str(), ring.c_str(), solve_prec > 0 ? solve_prec : o.prec_z,
                       &res);
    } else if (*tate) {
      std::string doc = read_file(input);
      st = dmiso_tate(ctx.get(), doc.c_str(), o.prec_z, &res);
    } else if (*weil) {
      std::string doc = read_file(input);
      st = dmiso_weil(ctx.get(), doc.c_str(), &res);
    } else if (*corpus) {
      st = dmiso_corpus(ctx.get(), dir.c_str(), o.jobs, &res);
    } else if (*verify) {
      std::string doc = read_file(input);
      st = dmiso_verify(ctx.get(), doc.c_str(), &res);
    }
    return emit(st, res, ctx.get(), o);
  } catch (const std::exception& e) {
    std::cerr << "dmiso: " << e.what() << "\n";
    return DMISO_ERR_INPUT;
  }
}
