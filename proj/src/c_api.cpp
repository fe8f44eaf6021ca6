#include "dmiso/dmiso.h"

#include <string>
#include <vector>

#include "dmiso/commands.hpp"

using dmiso::cmd::json;

struct dmiso_context {
  dmiso::io::PrecisionPolicy policy;
  std::string policy_text;
  std::string last_error;
};

struct dmiso_result {
  int status = 0;
  std::string json_text;
  std::string markdown;
};

namespace {

dmiso_status to_status(int s) { return static_cast<dmiso_status>(s); }

dmiso_result* make_result(const json& report, int status) {
  auto* r = new dmiso_result;
  r->status = status;
  r->json_text = report.dump(2) + "\n";
  r->markdown = dmiso::cmd::to_markdown(report);
  return r;
}

// Failure before any command ran: a report with a single error entry.
dmiso_result* error_result(const dmiso_context* ctx, int status, const char* kind, const std::string& msg) {
  json entry{{"command", "input"},
             {"status", status == DMISO_ERR_INPUT ? "input_error" : "internal_error"},
             {"errors", json::array({json{{"section", "input"}, {"kind", kind}, {"message", msg}}})}};
  return make_result(dmiso::cmd::make_report(ctx->policy, {entry}), status);
}

json parse_doc(const char* text, const char* what) {
  dmiso::require_input(text != nullptr, std::string(what) + " is missing");
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    dmiso::fail(dmiso::ErrorKind::Input, std::string(what) + " is not valid JSON: " + e.what());
  }
}

// Wraps a command so that no exception crosses the C boundary.
template <class Body>
dmiso_status run(dmiso_context* ctx, dmiso_result** out, Body body) {
  if (!ctx || !out) return DMISO_ERR_INPUT;
  *out = nullptr;
  ctx->last_error.clear();
  try {
    auto [report, status] = body();
    *out = make_result(report, status);
    return to_status(status);
  } catch (const dmiso::Error& e) {
    int st = dmiso::cmd::status_of(e.kind());
    ctx->last_error = e.what();
    *out = error_result(ctx, st, dmiso::error_kind_name(e.kind()), e.what());
    return to_status(st);
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
    *out = error_result(ctx, DMISO_ERR_INTERNAL, "Internal", e.what());
    return DMISO_ERR_INTERNAL;
  }
}

std::pair<json, int> single(const dmiso_context* ctx, const dmiso::cmd::Outcome& o) {
  return {dmiso::cmd::make_report(ctx->policy, {o.entry}), o.status};
}

}  // namespace

extern "C" {

const char* dmiso_version(void) { return dmiso::cmd::kVersion; }

dmiso_status dmiso_context_new(const char* policy_json, dmiso_context** out) {
  if (!out) return DMISO_ERR_INPUT;
  *out = nullptr;
  try {
    auto* c = new dmiso_context;
    try {
      json j = policy_json ? json::parse(policy_json) : json();
      c->policy = dmiso::io::parse_policy(j);
    } catch (const std::exception& e) {
      c->last_error = e.what();
      *out = c;
      return DMISO_ERR_INPUT;
    }
    c->policy_text = dmiso::io::policy_json(c->policy).dump();
    *out = c;
    return DMISO_OK;
  } catch (const std::exception&) {
    return DMISO_ERR_INTERNAL;
  }
}

void dmiso_context_free(dmiso_context* ctx) { delete ctx; }

const char* dmiso_context_policy(const dmiso_context* ctx) { return ctx ? ctx->policy_text.c_str() : ""; }

const char* dmiso_last_error(const dmiso_context* ctx) { return ctx ? ctx->last_error.c_str() : ""; }

dmiso_status dmiso_analyze(dmiso_context* ctx, const char* drinfeld_json, dmiso_result** out) {
  return run(ctx, out, [&] { return single(ctx, dmiso::cmd::analyze(parse_doc(drinfeld_json, "Drinfeld module"), ctx->policy)); });
}

dmiso_status dmiso_isocrystal(dmiso_context* ctx, const char* sub, const char* const* docs, size_t ndocs, int64_t s,
                              int64_t r, dmiso_result** out) {
  return run(ctx, out, [&] {
    dmiso::require_input(sub != nullptr, "subcommand is missing");
    dmiso::require_input(docs != nullptr || ndocs == 0, "documents are missing");
    std::vector<json> ds;
    for (size_t i = 0; i < ndocs; ++i) ds.push_back(parse_doc(docs[i], "isocrystal"));
    return single(ctx, dmiso::cmd::isocrystal(sub, ds, s, r, ctx->policy));
  });
}

dmiso_status dmiso_solve(dmiso_context* ctx, const char* a_json, const char* b_json, const char* ring, int64_t prec,
                         dmiso_result** out) {
  return run(ctx, out, [&] {
    dmiso::require_input(ring != nullptr, "ring is missing");
    json b = b_json ? parse_doc(b_json, "b") : json{{"z_coeffs", json::array()}};
    return single(ctx, dmiso::cmd::solve(parse_doc(a_json, "a"), b, ring, prec, ctx->policy));
  });
}

dmiso_status dmiso_tate(dmiso_context* ctx, const char* isocrystal_json, int64_t zprec, dmiso_result** out) {
  return run(ctx, out, [&] { return single(ctx, dmiso::cmd::tate(parse_doc(isocrystal_json, "isocrystal"), zprec, ctx->policy)); });
}

dmiso_status dmiso_weil(dmiso_context* ctx, const char* drinfeld_json, dmiso_result** out) {
  return run(ctx, out, [&] { return single(ctx, dmiso::cmd::weil(parse_doc(drinfeld_json, "Drinfeld module"), ctx->policy)); });
}

dmiso_status dmiso_corpus(dmiso_context* ctx, const char* dir, unsigned jobs, dmiso_result** out) {
  return run(ctx, out, [&] {
    dmiso::require_input(dir != nullptr, "corpus directory is missing");
    auto c = dmiso::cmd::corpus(dir, ctx->policy, jobs);
    return std::pair<json, int>{c.report, c.status};
  });
}

dmiso_status dmiso_verify(dmiso_context* ctx, const char* report_json, dmiso_result** out) {
  return run(ctx, out, [&] {
    auto v = dmiso::cmd::verify(parse_doc(report_json, "report"));
    return std::pair<json, int>{v.report, v.status};
  });
}

dmiso_status dmiso_result_status(const dmiso_result* res) { return res ? to_status(res->status) : DMISO_ERR_INPUT; }

const char* dmiso_result_json(const dmiso_result* res) { return res ? res->json_text.c_str() : ""; }

const char* dmiso_result_markdown(const dmiso_result* res) { return res ? res->markdown.c_str() : ""; }

void dmiso_result_free(dmiso_result* res) { delete res; }

}  // extern "C"
