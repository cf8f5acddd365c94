// Command-line front end: validates and inspects chain complexes,
// dg-coalgebras, dg-comodules, and their maps; computes splittings,
// cotensor products, CoTor and Ext tables, fibrancy and fibration
// certificates, fibrant-replacement towers, map factorizations, and the
// cotensor spectral sequence; and lists or writes the builtin fixtures.
//
// Exit codes: 0 success, 1 precondition violated (bad flags or inputs
// breaking a documented requirement), 2 parse error, 3 internal error.

#include <algorithm>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cotensor/chain.hpp"
#include "cotensor/coalgebra.hpp"
#include "cotensor/common.hpp"
#include "cotensor/comodule.hpp"
#include "cotensor/cotensor.hpp"
#include "cotensor/emss.hpp"
#include "cotensor/field.hpp"
#include "cotensor/fixtures.hpp"
#include "cotensor/io.hpp"
#include "cotensor/postnikov.hpp"

using namespace cotensor;

namespace {

struct SessionConfig {
  long long field = 2;
  int maxdeg = 6;
  int qmax = 4;
  int stages = 0;  // 0 = derive from the input
  std::string format = "human";
  bool verify = false;

  bool machine() const { return format == "machine"; }
};

void check_config(const SessionConfig& c) {
  FieldSpec f{c.field};
  if (c.field < 0 || !f.is_valid())
    throw precondition_error("--field must be 0 (rationals) or a prime");
  if (c.maxdeg < 2) throw precondition_error("--maxdeg must be at least 2");
  if (c.qmax < 1) throw precondition_error("--qmax must be at least 1");
  if (c.format != "human" && c.format != "machine")
    throw precondition_error("--format must be human or machine");
}

std::string dims_text(const GradedDims& d) {
  std::string s;
  for (size_t i = 0; i < d.size(); ++i) {
    if (i) s += " ";
    s += std::to_string(d[i]);
  }
  return s;
}

void print_report(std::ostream& os, const SessionConfig& cfg,
                  const std::string& key, const Report& r) {
  if (cfg.machine()) {
    os << key << " " << (r.ok ? "ok" : "fail") << "\n";
    for (const auto& s : r.issues) os << "issue " << s << "\n";
  } else {
    os << key << ": " << (r.ok ? "ok" : "FAILED") << "\n";
    for (const auto& s : r.issues) os << "  - " << s << "\n";
  }
}

// ---- input plumbing ----

const ChainComplex& carrier_of(const ParsedInput& in) {
  switch (in.kind) {
    case InputKind::complex: return *in.complex;
    case InputKind::coalgebra: return in.coalgebra->c;
    case InputKind::comodule: return in.comodule->x;
    default:
      throw precondition_error(
          "this command expects a complex, coalgebra, or comodule");
  }
}

const DGComodule& comodule_of(const ParsedInput& in, const std::string& path) {
  if (in.kind != InputKind::comodule)
    throw precondition_error(path + " is a " + to_string(in.kind) +
                             "; this command expects a comodule");
  return *in.comodule;
}

const ComoduleMap& comodule_map_of(const ParsedInput& in,
                                   const std::string& path) {
  if (in.kind != InputKind::comodule_map)
    throw precondition_error(path + " is a " + to_string(in.kind) +
                             "; this command expects a comodule-map");
  return *in.comodule_map;
}

Report validate_any(const ParsedInput& in) {
  switch (in.kind) {
    case InputKind::complex: return validate_complex(*in.complex);
    case InputKind::coalgebra: return validate_coalgebra(*in.coalgebra);
    case InputKind::comodule: return validate_comodule(*in.comodule);
    case InputKind::comodule_map:
      return validate_comodule_map(*in.comodule_map);
    case InputKind::coalgebra_map:
      return validate_coalgebra_map(*in.coalgebra_map);
  }
  throw internal_error("unreachable input kind");
}

ParsedInput load(const SessionConfig& cfg, const std::string& path) {
  ParsedInput in = parse_input(path);
  if (cfg.verify) {
    Report r = validate_any(in);
    if (!r.ok) {
      std::string msg = path + " failed validation:";
      for (const auto& s : r.issues) msg += "\n  - " + s;
      throw precondition_error(msg);
    }
  }
  return in;
}

void emit_header(std::ostream& os, const SessionConfig& cfg,
                 const std::string& command, const ParsedInput* a,
                 const ParsedInput* b) {
  if (cfg.machine()) {
    os << "command " << command << "\n";
    for (const ParsedInput* in : {a, b})
      if (in)
        os << "input " << to_string(in->kind)
           << (in->name.empty() ? "" : " " + in->name) << "\n";
  } else {
    os << command;
    for (const ParsedInput* in : {a, b})
      if (in)
        os << " [" << to_string(in->kind)
           << (in->name.empty() ? "" : " " + in->name) << "]";
    os << "\n";
  }
}

// ---- commands ----

long long carrier_field_or(const ParsedInput& in);

int cmd_validate(const SessionConfig& cfg, const std::string& path) {
  ParsedInput in = parse_input(path);
  Report r = validate_any(in);
  emit_header(std::cout, cfg, "validate", &in, nullptr);
  if (cfg.machine()) {
    std::cout << "field "
              << carrier_field_or(in) << "\n";
  }
  print_report(std::cout, cfg, "valid", r);
  return r.ok ? 0 : 1;
}

int cmd_homology(const SessionConfig& cfg, const std::string& path) {
  ParsedInput in = load(cfg, path);
  const ChainComplex& x = carrier_of(in);
  emit_header(std::cout, cfg, "homology", &in, nullptr);
  int through = homology_exact_through(x);
  GradedDims h = homology_dims(x);
  if (cfg.machine()) {
    std::cout << "exact_through " << through << "\n";
    for (int n = 0; n <= through; ++n) std::cout << "h " << n << " " << h[n] << "\n";
  } else {
    std::cout << "dims: " << dims_text(x.dims())
              << (x.truncated() ? " (truncated)" : "") << "\n";
    for (int n = 0; n <= through; ++n)
      std::cout << "H_" << n << " = " << h[n] << "\n";
  }
  return 0;
}

int cmd_split(const SessionConfig& cfg, const std::string& path) {
  ParsedInput in = load(cfg, path);
  const ChainComplex& x = carrier_of(in);
  Splitting s = split_complex(x);
  emit_header(std::cout, cfg, "split", &in, nullptr);
  Report check;
  for (int n = 0; n <= x.maxdeg(); ++n) {
    Matrix reps = s.homology_reps(n);
    check.require((x.diff(n) * reps).is_zero(),
                  "representatives in degree " + std::to_string(n) +
                      " are not cycles");
    Matrix span = s.bounds[n].hstack(reps);
    check.require(span.rank() == s.bounds[n].cols() + reps.cols(),
                  "representatives in degree " + std::to_string(n) +
                      " meet the boundaries");
    if (cfg.machine())
      std::cout << "degree " << n << " cycles " << s.cycles[n].cols()
                << " bounds " << s.bounds[n].cols() << " h " << reps.cols()
                << "\n";
    else
      std::cout << "degree " << n << ": cycles " << s.cycles[n].cols()
                << ", boundaries " << s.bounds[n].cols() << ", H = "
                << reps.cols() << "\n";
  }
  print_report(std::cout, cfg, "check", check);
  return check.ok ? 0 : 1;
}

int cmd_cotensor(const SessionConfig& cfg, const std::string& px,
                 const std::string& py) {
  ParsedInput ia = load(cfg, px), ib = load(cfg, py);
  const DGComodule& x = comodule_of(ia, px);
  const DGComodule& y = comodule_of(ib, py);
  CotensorResult r = cotensor::cotensor(x, y, cfg.maxdeg);
  emit_header(std::cout, cfg, "cotensor", &ia, &ib);
  int through = homology_exact_through(r.complex);
  GradedDims h = homology_dims(r.complex);
  if (cfg.machine()) {
    std::cout << "cap " << cfg.maxdeg << "\n";
    std::cout << "dims " << dims_text(r.complex.dims()) << "\n";
    std::cout << "comodule " << (r.comodule ? 1 : 0) << "\n";
    for (int n = 0; n <= through; ++n) std::cout << "h " << n << " " << h[n] << "\n";
  } else {
    std::cout << "dims: " << dims_text(r.complex.dims())
              << (r.complex.truncated() ? " (truncated)" : "") << "\n";
    std::cout << "induced comodule: " << (r.comodule ? "yes" : "no") << "\n";
    for (int n = 0; n <= through; ++n)
      std::cout << "H_" << n << " = " << h[n] << "\n";
  }
  return 0;
}

int cmd_cotor(const SessionConfig& cfg, const std::string& px,
              const std::string& py) {
  ParsedInput ia = load(cfg, px), ib = load(cfg, py);
  const DGComodule& x = comodule_of(ia, px);
  const DGComodule& y = comodule_of(ib, py);
  CotorResult r = cotor(x, y, cfg.qmax, cfg.maxdeg);
  emit_header(std::cout, cfg, "cotor", &ia, &ib);
  if (cfg.machine()) {
    std::cout << "qmax " << r.qmax << "\nthrough " << r.through << "\n";
    for (int q = 0; q <= r.qmax; ++q)
      for (int n = 0; n <= r.through; ++n)
        std::cout << "cotor " << q << " " << n << " " << r.dims[q][n] << "\n";
  } else {
    std::cout << "rows q = 0.." << r.qmax << ", columns n = 0.." << r.through
              << "\n";
    for (int q = 0; q <= r.qmax; ++q) {
      std::cout << "q=" << q << ":";
      for (int n = 0; n <= r.through; ++n) std::cout << " " << r.dims[q][n];
      std::cout << "\n";
    }
  }
  if (cfg.verify) {
    int qv = std::min(r.qmax, 2);
    CotorResult rr = cotor_via_resolution(x, y, qv, r.through);
    Report cross;
    for (int q = 0; q <= qv; ++q)
      for (int n = 0; n <= r.through; ++n)
        cross.require(r.dims[q][n] == rr.dims[q][n],
                      "resolution route disagrees at q=" + std::to_string(q) +
                          " n=" + std::to_string(n));
    print_report(std::cout, cfg, "cross_check", cross);
    if (!cross.ok) return 1;
  }
  return 0;
}

int cmd_ext(const SessionConfig& cfg, const std::string& px,
            const std::string& py) {
  ParsedInput ia = load(cfg, px), ib = load(cfg, py);
  const DGComodule& x = comodule_of(ia, px);
  const DGComodule& y = comodule_of(ib, py);
  emit_header(std::cout, cfg, "ext", &ia, &ib);
  int lo = -cfg.maxdeg, hi = cfg.maxdeg;
  if (cfg.machine()) std::cout << "lo " << lo << "\nhi " << hi << "\n";
  for (int i = 0; i <= cfg.qmax; ++i) {
    ExtResult e = ext(x, y, i, lo, hi);
    if (cfg.machine()) {
      for (int n = lo; n <= hi; ++n)
        std::cout << "ext " << i << " " << n << " " << e.dim(n) << "\n";
    } else {
      std::cout << "Ext^" << i << ":";
      for (int n = lo; n <= hi; ++n)
        if (e.dim(n)) std::cout << " [deg " << n << "] " << e.dim(n);
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_fibrant(const SessionConfig& cfg, const std::string& path) {
  ParsedInput in = load(cfg, path);
  const DGComodule& m = comodule_of(in, path);
  FibrancyCertificate c = is_fibrant(m);
  emit_header(std::cout, cfg, "fibrant", &in, nullptr);
  if (cfg.machine()) {
    std::cout << "fibrant " << (c.fibrant ? 1 : 0) << "\n";
    std::cout << "through " << c.through << "\n";
    std::cout << "witness_degree " << c.witness_degree << "\n";
  } else if (c.fibrant) {
    std::cout << "fibrant: yes (CoTor^1(k, -) vanishes through degree "
              << c.through << ")\n";
  } else {
    std::cout << "fibrant: no (CoTor^1(k, -) is nonzero in degree "
              << c.witness_degree << ")\n";
  }
  return 0;
}

int cmd_fibration(const SessionConfig& cfg, const std::string& path) {
  ParsedInput in = load(cfg, path);
  const ComoduleMap& f = comodule_map_of(in, path);
  FibrationResult r = is_fibration(f);
  emit_header(std::cout, cfg, "fibration", &in, nullptr);
  std::string verdict = r.verdict == FibrationVerdict::yes ? "yes"
                        : r.verdict == FibrationVerdict::no ? "no"
                                                            : "inconclusive";
  if (cfg.machine()) {
    std::cout << "verdict " << verdict << "\n";
    std::cout << "through " << r.through << "\n";
    if (!r.detail.empty()) std::cout << "detail " << r.detail << "\n";
  } else {
    std::cout << "fibration: " << verdict;
    if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
    std::cout << "\n";
  }
  return 0;
}

int cmd_postnikov(const SessionConfig& cfg, const std::string& path) {
  ParsedInput in = load(cfg, path);
  const DGComodule& m = comodule_of(in, path);
  int stages =
      cfg.stages > 0 ? cfg.stages : std::max(m.maxdeg() + 2, cfg.maxdeg);
  PostnikovTower t = postnikov_tower(m, stages);
  StabilizedLimit lim = stabilized_limit(t);
  emit_header(std::cout, cfg, "postnikov", &in, nullptr);
  if (cfg.machine()) {
    std::cout << "stages " << (t.stages.size() - 1) << "\n";
    for (size_t k = 0; k < t.stages.size(); ++k)
      std::cout << "stage " << k << " dims " << dims_text(t.stages[k].x.dims())
                << "\n";
    for (const auto& a : t.attach)
      std::cout << "vdim " << a.n << " " << a.vdim << "\n";
    std::cout << "limit dims " << dims_text(lim.m.x.dims()) << "\n";
    std::cout << "limit_truncated " << (lim.m.x.truncated() ? 1 : 0) << "\n";
    std::cout << "quasi_iso " << (is_quasi_iso(lim.incl.carrier()) ? 1 : 0)
              << "\n";
    FibrancyCertificate c = is_fibrant(lim.m, homology_exact_through(lim.m.x));
    std::cout << "limit_fibrant " << (c.fibrant ? 1 : 0) << "\n";
  } else {
    std::cout << "tower to stage " << (t.stages.size() - 1) << "\n";
    for (size_t k = 0; k < t.stages.size(); ++k)
      std::cout << "  X(" << k << ") dims: " << dims_text(t.stages[k].x.dims())
                << "\n";
    for (const auto& a : t.attach)
      std::cout << "  attached V_" << a.n << " of dim " << a.vdim << "\n";
    std::cout << "limit dims: " << dims_text(lim.m.x.dims())
              << (lim.m.x.truncated() ? " (truncated)" : "") << "\n";
    std::cout << "X -> limit quasi-isomorphism: "
              << (is_quasi_iso(lim.incl.carrier()) ? "yes" : "no") << "\n";
    FibrancyCertificate c = is_fibrant(lim.m, homology_exact_through(lim.m.x));
    std::cout << "limit fibrant: " << (c.fibrant ? "yes" : "no") << "\n";
  }
  if (cfg.verify) {
    Report r = verify_tower(t);
    print_report(std::cout, cfg, "verify", r);
    if (!r.ok) return 1;
  }
  return 0;
}

int cmd_factorize(const SessionConfig& cfg, const std::string& path) {
  ParsedInput in = load(cfg, path);
  const ComoduleMap& f = comodule_map_of(in, path);
  Factorization fz = factorize(f, cfg.stages);
  emit_header(std::cout, cfg, "factorize", &in, nullptr);
  // Cheap contract checks, always on: mono + composite identity.
  bool mono = true;
  int through = homology_exact_through(fz.wtilde.x);
  for (int n = 0; n <= fz.jtilde.source.maxdeg(); ++n)
    mono = mono && fz.jtilde.at(n).kernel_basis().cols() == 0;
  bool composite = true;
  for (int n = 0; n <= fz.f.source.maxdeg(); ++n)
    composite =
        composite && fz.tower_map.at(n) * fz.jtilde.at(n) == fz.f.at(n);
  bool qiso = is_quasi_iso(fz.jtilde.carrier(), through);
  if (cfg.machine()) {
    std::cout << "w dims " << dims_text(fz.w.x.dims()) << "\n";
    std::cout << "wtilde dims " << dims_text(fz.wtilde.x.dims()) << "\n";
    std::cout << "wtilde_truncated " << (fz.wtilde.x.truncated() ? 1 : 0)
              << "\n";
    std::cout << "mono " << (mono ? 1 : 0) << "\n";
    std::cout << "composite " << (composite ? 1 : 0) << "\n";
    std::cout << "quasi_iso " << (qiso ? 1 : 0) << "\n";
  } else {
    std::cout << "W dims: " << dims_text(fz.w.x.dims()) << "\n";
    std::cout << "corrected W dims: " << dims_text(fz.wtilde.x.dims())
              << (fz.wtilde.x.truncated() ? " (truncated)" : "") << "\n";
    std::cout << "X -> W mono: " << (mono ? "yes" : "no")
              << ", quasi-isomorphism: " << (qiso ? "yes" : "no") << "\n";
    std::cout << "composite equals the given map: "
              << (composite ? "yes" : "no") << "\n";
  }
  int rc = (mono && composite && qiso) ? 0 : 1;
  if (cfg.verify) {
    Report r = verify_factorization(fz);
    print_report(std::cout, cfg, "verify", r);
    if (!r.ok) rc = 1;
  }
  return rc;
}

void print_page(std::ostream& os, const SessionConfig& cfg,
                const SpectralSequencePage& p, int window) {
  if (cfg.machine()) {
    for (int q = 0; q <= p.qmax(); ++q)
      for (int pp = 0; pp <= p.cap(); ++pp) {
        if (pp - q < 0 || pp - q > window) continue;
        int d = p.dim(q, pp);
        if (d) os << "page " << p.r << " " << q << " " << pp << " " << d << "\n";
      }
    for (int q = 0; q <= p.qmax(); ++q)
      for (int pp = 0; pp <= p.cap(); ++pp) {
        if (pp - q < 0 || pp - q > window) continue;
        int rk = p.d_at(q, pp).rank();
        if (rk) os << "d " << p.r << " " << q << " " << pp << " " << rk << "\n";
      }
  } else {
    os << "E_" << p.r << ":";
    bool any = false;
    for (int q = 0; q <= p.qmax(); ++q)
      for (int pp = 0; pp <= p.cap(); ++pp) {
        if (pp - q < 0 || pp - q > window) continue;
        int d = p.dim(q, pp);
        if (d) {
          os << " (q=" << q << ",p=" << pp << ")=" << d;
          any = true;
        }
      }
    if (!any) os << " 0";
    os << "\n";
  }
}

int cmd_emss(const SessionConfig& cfg, const std::string& px,
             const std::string& py) {
  ParsedInput ia = load(cfg, px), ib = load(cfg, py);
  const DGComodule& x = comodule_of(ia, px);
  const DGComodule& y = comodule_of(ib, py);
  int window = cfg.maxdeg;
  int qmax = window + 1;
  int cap = 2 * window + 2;
  emit_header(std::cout, cfg, "emss", &ia, &ib);
  if (cfg.machine())
    std::cout << "qmax " << qmax << "\ncap " << cap << "\nwindow " << window
              << "\n";
  else
    std::cout << "trustworthy through total degree " << window << "\n";
  SpectralSequencePage p1 = e1_page(x, y, qmax, cap);
  Report pages_ok;
  if (cfg.verify) pages_ok.merge(validate_page(p1), "page 1: ");
  print_page(std::cout, cfg, p1, window);
  SpectralSequencePage p = next_page(p1);
  SpectralSequencePage last = run_to_einfty(p);
  while (true) {
    if (cfg.verify) {
      std::ostringstream pre;
      pre << "page " << p.r << ": ";
      pages_ok.merge(validate_page(p), pre.str());
    }
    print_page(std::cout, cfg, p, window);
    if (p.r >= last.r) break;
    p = next_page(p);
  }
  // Abutment: antidiagonal sums of the final page against the homology of
  // the filtered total complex.
  GradedDims einf = page_total_dims(p, window);
  Report abut;
  const FilteredTotal& tot = *p.tot;
  for (int n = 0; n <= window; ++n) {
    int h = tot.dim(n) - tot.diff(n).rank() - tot.diff(n + 1).rank();
    if (cfg.machine())
      std::cout << "einfty_total " << n << " " << einf[n] << "\n"
                << "total " << n << " " << h << "\n";
    else
      std::cout << "total degree " << n << ": E_inf sum " << einf[n]
                << ", homology " << h << "\n";
    abut.require(einf[n] == h,
                 "abutment mismatch in total degree " + std::to_string(n));
  }
  print_report(std::cout, cfg, "abutment", abut);
  if (cfg.verify) print_report(std::cout, cfg, "pages", pages_ok);
  return (abut.ok && pages_ok.ok) ? 0 : 1;
}

std::string file_safe(std::string name) {
  for (char& c : name)
    if (c == '(') c = '-';
  name.erase(std::remove(name.begin(), name.end(), ')'), name.end());
  return name;
}

int cmd_fixtures(const SessionConfig& cfg, const std::string& write_dir) {
  FieldSpec f{cfg.field};
  auto cs = fixture_coalgebras(f);
  auto ms = fixture_comodules(f);
  emit_header(std::cout, cfg, "fixtures", nullptr, nullptr);
  if (cfg.machine()) std::cout << "field " << cfg.field << "\n";
  for (const auto& nc : cs)
    std::cout << (cfg.machine() ? "coalgebra " : "coalgebra ") << nc.name
              << (cfg.machine() ? " dims " : ": dims ")
              << dims_text(nc.c->c.dims()) << "\n";
  for (const auto& nm : ms)
    std::cout << (cfg.machine() ? "comodule " : "comodule ")
              << file_safe(nm.name)
              << (cfg.machine() ? " dims " : ": dims ")
              << dims_text(nm.m.x.dims()) << "\n";
  std::cout << (cfg.machine() ? "coalgebra-map collapse-f3-f2\n"
                              : "coalgebra map: collapse-f3-f2\n");
  if (write_dir.empty()) return 0;

  const std::map<std::string, std::string> blurbs = {
      {"f1", "The point: one class in degree 0, trivial comultiplication."},
      {"f2",
       "Chain-level homology of the 2-sphere: classes in degrees 0 and 2,\n"
       "// zero differential, primitive degree-2 class."},
      {"f3",
       "The 2-sphere model with an acyclic summand glued in: a degree-3\n"
       "// class mapping isomorphically onto a new degree-2 class, so the\n"
       "// inclusion of the 2-sphere model is a quasi-isomorphism."},
      {"f4",
       "Chain-level homology of the complex projective plane: classes in\n"
       "// degrees 0, 2, 4 with the degree-4 class comultiplying through\n"
       "// the square of the degree-2 class."}};
  for (const auto& nc : cs) {
    std::string head = "// " + blurbs.at(nc.name) + "\n";
    write_text_file(write_dir + "/" + nc.name + ".json",
                    head + serialize_coalgebra(*nc.c, nc.name));
  }
  for (const auto& nm : ms) {
    std::string fname = file_safe(nm.name);
    bool cofree = fname.rfind("cofree", 0) == 0;
    std::string which = fname.substr(fname.size() - 2);
    std::string head =
        cofree ? "// Cofree comodule on the unit complex: carrier C itself,\n"
                 "// coaction the comultiplication.\n"
               : "// Trivial comodule: the unit complex with coaction along\n"
                 "// the coaugmentation.\n";
    write_text_file(write_dir + "/" + fname + ".json",
                    head + serialize_comodule(nm.m, which + ".json", fname));
  }
  CoalgebraMap col = fixture_collapse_map(f);
  write_text_file(
      write_dir + "/collapse-f3-f2.json",
      "// Collapse of the acyclic summand: identity on the 2-sphere\n"
      "// classes, zero on the summand; a quasi-isomorphism of coalgebras.\n" +
          serialize_coalgebra_map(col, "f3.json", "f2.json",
                                  "collapse-f3-f2"));
  if (!cfg.machine())
    std::cout << "wrote fixture files to " << write_dir << "\n";
  return 0;
}

long long carrier_field_or(const ParsedInput& in) {
  switch (in.kind) {
    case InputKind::complex: return in.complex->field().characteristic;
    case InputKind::coalgebra: return in.coalgebra->field().characteristic;
    case InputKind::comodule: return in.comodule->field().characteristic;
    case InputKind::comodule_map:
      return in.comodule_map->source.field().characteristic;
    case InputKind::coalgebra_map:
      return in.coalgebra_map->source.field().characteristic;
  }
  throw internal_error("unreachable input kind");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact chain-level coalgebra calculator"};
  app.require_subcommand(1);

  SessionConfig cfg;
  app.add_option("--field", cfg.field,
                 "ground field: 0 for the rationals, else a prime");
  app.add_option("--maxdeg", cfg.maxdeg, "top chain degree for computations");
  app.add_option("--qmax", cfg.qmax, "top cohomological degree");
  app.add_option("--stages", cfg.stages, "tower stages (0 = automatic)");
  app.add_option("--format", cfg.format, "output format: human or machine");
  app.add_flag("--verify", cfg.verify, "run self-checks along the way");

  std::string p1, p2, write_dir;
  auto add1 = [&](CLI::App* sub) {
    sub->add_option("input", p1, "input file")->required();
    sub->fallthrough();
  };
  auto add2 = [&](CLI::App* sub) {
    sub->add_option("x", p1, "right comodule file")->required();
    sub->add_option("y", p2, "left comodule file")->required();
    sub->fallthrough();
  };

  add1(app.add_subcommand("validate", "check the axioms of an input file"));
  add1(app.add_subcommand("homology", "homology dimensions of a carrier"));
  add1(app.add_subcommand("split",
                          "cycle/boundary/homology splitting of a carrier"));
  add2(app.add_subcommand("cotensor", "cotensor product of two comodules"));
  add2(app.add_subcommand("cotor", "derived cotensor table"));
  add2(app.add_subcommand("ext", "comodule Ext table"));
  add1(app.add_subcommand("fibrant", "coflatness certificate"));
  add1(app.add_subcommand("fibration", "fibration certificate for a map"));
  add1(app.add_subcommand("postnikov", "fibrant replacement tower"));
  add1(app.add_subcommand("factorize",
                          "factor a map as mono quasi-iso then fibration"));
  add2(app.add_subcommand("emss", "cotensor spectral sequence"));
  auto* fx = app.add_subcommand("fixtures", "list or write builtin fixtures");
  fx->add_option("--write", write_dir, "write fixture files to a directory");
  fx->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    check_config(cfg);
    if (app.got_subcommand("validate")) return cmd_validate(cfg, p1);
    if (app.got_subcommand("homology")) return cmd_homology(cfg, p1);
    if (app.got_subcommand("split")) return cmd_split(cfg, p1);
    if (app.got_subcommand("cotensor")) return cmd_cotensor(cfg, p1, p2);
    if (app.got_subcommand("cotor")) return cmd_cotor(cfg, p1, p2);
    if (app.got_subcommand("ext")) return cmd_ext(cfg, p1, p2);
    if (app.got_subcommand("fibrant")) return cmd_fibrant(cfg, p1);
    if (app.got_subcommand("fibration")) return cmd_fibration(cfg, p1);
    if (app.got_subcommand("postnikov")) return cmd_postnikov(cfg, p1);
    if (app.got_subcommand("factorize")) return cmd_factorize(cfg, p1);
    if (app.got_subcommand("emss")) return cmd_emss(cfg, p1, p2);
    if (app.got_subcommand("fixtures")) return cmd_fixtures(cfg, write_dir);
    throw internal_error("no subcommand dispatched");
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const precondition_error& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return 1;
  } catch (const internal_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
