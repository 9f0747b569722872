#include <gconv/gconv.h>

#include <cstdlib>
#include <cstring>
#include <new>

#include "commands.hpp"

using namespace gconv;

struct gconv_group {
  GroupPtr g;
};
struct gconv_space {
  SpacePtr s;
};
struct gconv_function {
  SpaceFunction f;
};

namespace {

thread_local std::string last_error;

gconv_status fail(gconv_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

// Runs body, translating exceptions into status codes.
template <class F>
gconv_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return GCONV_OK;
  } catch (const ParseError& e) {
    return fail(GCONV_E_PARSE, e.what());
  } catch (const MismatchError& e) {
    return fail(GCONV_E_MISMATCH, e.what());
  } catch (const ResourceError& e) {
    return fail(GCONV_E_RESOURCE, e.what());
  } catch (const NumericalError& e) {
    return fail(GCONV_E_NUMERICAL, e.what());
  } catch (const json::exception& e) {
    return fail(GCONV_E_PARSE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(GCONV_E_RESOURCE, "out of memory");
  } catch (const std::exception& e) {
    return fail(GCONV_E_INTERNAL, e.what());
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

#define GCONV_NEED(p) \
  if (!(p)) return fail(GCONV_E_ARGUMENT, #p " is null")

}  // namespace

extern "C" {

const char* gconv_last_error(void) { return last_error.c_str(); }

const char* gconv_status_name(gconv_status s) {
  switch (s) {
    case GCONV_OK: return "ok";
    case GCONV_E_ARGUMENT: return "invalid argument";
    case GCONV_E_PARSE: return "parse error";
    case GCONV_E_MISMATCH: return "mismatch";
    case GCONV_E_RESOURCE: return "resource limit";
    case GCONV_E_NUMERICAL: return "numerical error";
    case GCONV_E_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* gconv_version(void) { return "0.1.0"; }

void gconv_string_free(char* s) { std::free(s); }

gconv_status gconv_group_create(const char* spec, gconv_group** out) {
  GCONV_NEED(spec);
  GCONV_NEED(out);
  return guarded([&] { *out = new gconv_group{build_group(spec)}; });
}

void gconv_group_free(gconv_group* g) { delete g; }

gconv_status gconv_group_order(const gconv_group* g, size_t* out) {
  GCONV_NEED(g);
  GCONV_NEED(out);
  *out = g->g->order();
  return GCONV_OK;
}

gconv_status gconv_group_multiply(const gconv_group* g, size_t a, size_t b, size_t* out) {
  GCONV_NEED(g);
  GCONV_NEED(out);
  if (a >= g->g->order() || b >= g->g->order()) return fail(GCONV_E_ARGUMENT, "element id out of range");
  *out = g->g->mul(element_t(a), element_t(b));
  return GCONV_OK;
}

gconv_status gconv_group_inverse(const gconv_group* g, size_t a, size_t* out) {
  GCONV_NEED(g);
  GCONV_NEED(out);
  if (a >= g->g->order()) return fail(GCONV_E_ARGUMENT, "element id out of range");
  *out = g->g->inv(element_t(a));
  return GCONV_OK;
}

gconv_status gconv_group_label(const gconv_group* g, size_t a, char** out) {
  GCONV_NEED(g);
  GCONV_NEED(out);
  if (a >= g->g->order()) return fail(GCONV_E_ARGUMENT, "element id out of range");
  return guarded([&] { *out = dup(g->g->label(element_t(a))); });
}

gconv_status gconv_group_parse(const gconv_group* g, const char* label, size_t* out) {
  GCONV_NEED(g);
  GCONV_NEED(label);
  GCONV_NEED(out);
  return guarded([&] { *out = g->g->parse_element(label); });
}

gconv_status gconv_space_create(const gconv_group* g, const char* quotient_json, gconv_space** out) {
  GCONV_NEED(g);
  GCONV_NEED(out);
  return guarded([&] {
    json q = quotient_json && *quotient_json ? json::parse(quotient_json) : json();
    *out = new gconv_space{quotient_from_json(q, g->g)};
  });
}

void gconv_space_free(gconv_space* s) { delete s; }

gconv_status gconv_space_size(const gconv_space* s, size_t* out) {
  GCONV_NEED(s);
  GCONV_NEED(out);
  *out = s->s->size();
  return GCONV_OK;
}

gconv_status gconv_space_act(const gconv_space* s, size_t g, size_t x, size_t* out) {
  GCONV_NEED(s);
  GCONV_NEED(out);
  if (g >= s->s->group()->order() || x >= s->s->size()) return fail(GCONV_E_ARGUMENT, "index out of range");
  return guarded([&] { *out = act(element_t(g), x, *s->s); });
}

gconv_status gconv_space_to_json(const gconv_space* s, char** out) {
  GCONV_NEED(s);
  GCONV_NEED(out);
  return guarded([&] { *out = dup(space_to_json(*s->s).dump()); });
}

gconv_status gconv_function_create(const gconv_space* s, size_t rows, size_t cols, const double* values,
                                   gconv_function** out) {
  GCONV_NEED(s);
  GCONV_NEED(values);
  GCONV_NEED(out);
  if (rows == 0 || cols == 0) return fail(GCONV_E_ARGUMENT, "rows and cols must be positive");
  return guarded([&] {
    SpaceFunction f(s->s, rows, cols);
    const double* p = values;
    for (std::size_t x = 0; x < f.size(); ++x)
      for (Eigen::Index i = 0; i < Eigen::Index(rows); ++i)
        for (Eigen::Index j = 0; j < Eigen::Index(cols); ++j, p += 2) f[x](i, j) = cplx(p[0], p[1]);
    *out = new gconv_function{std::move(f)};
  });
}

gconv_status gconv_function_from_json(const char* text, gconv_function** out) {
  GCONV_NEED(text);
  GCONV_NEED(out);
  return guarded([&] { *out = new gconv_function{function_from_json(json::parse(text))}; });
}

gconv_status gconv_function_to_json(const gconv_function* f, char** out) {
  GCONV_NEED(f);
  GCONV_NEED(out);
  return guarded([&] { *out = dup(function_to_json(f->f).dump()); });
}

void gconv_function_free(gconv_function* f) { delete f; }

gconv_status gconv_function_shape(const gconv_function* f, size_t* size, size_t* rows, size_t* cols) {
  GCONV_NEED(f);
  if (size) *size = f->f.size();
  if (rows) *rows = f->f.rows();
  if (cols) *cols = f->f.cols();
  return GCONV_OK;
}

gconv_status gconv_function_values(const gconv_function* f, double* values) {
  GCONV_NEED(f);
  GCONV_NEED(values);
  double* p = values;
  for (std::size_t x = 0; x < f->f.size(); ++x)
    for (Eigen::Index i = 0; i < f->f[x].rows(); ++i)
      for (Eigen::Index j = 0; j < f->f[x].cols(); ++j, p += 2) {
        p[0] = f->f[x](i, j).real();
        p[1] = f->f[x](i, j).imag();
      }
  return GCONV_OK;
}

gconv_status gconv_convolve(const gconv_function* f, const gconv_function* g, int conv_case, int via_fourier,
                            gconv_function** out) {
  GCONV_NEED(f);
  GCONV_NEED(g);
  GCONV_NEED(out);
  if (conv_case < 0 || conv_case > 3) return fail(GCONV_E_ARGUMENT, "conv_case must be 0..3");
  return guarded([&] {
    *out = new gconv_function{run_convolution(ConvolutionCase(conv_case), f->f, g->f, via_fourier != 0)};
  });
}

gconv_status gconv_run(const char* command, const char* request_json, char** report_json, int* pass) {
  GCONV_NEED(command);
  GCONV_NEED(report_json);
  return guarded([&] {
    json req = request_json && *request_json ? json::parse(request_json) : json::object();
    auto r = run_command(command, req);
    *report_json = dup(r.to_json().dump(2));
    if (pass) *pass = r.pass() ? 1 : 0;
  });
}

gconv_status gconv_report_table(const char* report_json, char** out) {
  GCONV_NEED(report_json);
  GCONV_NEED(out);
  return guarded([&] { *out = dup(Report::from_json(json::parse(report_json)).table()); });
}

}  // extern "C"
