#include "kks/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <sstream>

#include "kks/json_io.hpp"
#include "kks/kcode.hpp"
#include "kks/order_lab.hpp"
#include "kks/shapes.hpp"
#include "kks/symfunc.hpp"
#include "kks/verify.hpp"

namespace kks {

using nlohmann::json;

namespace {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Format { Text, Json, Csv };

struct Options {
  int k = 0;
  std::string lambda;
  std::string w;
  int r = -1;
  int t = -1;
  int max_size = -1;
  std::string format = "text";
  int jobs = 1;
  std::string basis = "g";
  std::string cache;
};

Format parse_format(const std::string& s) {
  if (s == "text") return Format::Text;
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  throw ConfigError("unknown format: " + s);
}

void validate(const Options& o) {
  if (o.k < 1 || o.k > kMaxCliRank) {
    throw ConfigError("--k must be between 1 and " + std::to_string(kMaxCliRank));
  }
  if (o.max_size > kMaxCliSize) {
    throw ConfigError("--max-size must be at most " + std::to_string(kMaxCliSize));
  }
  if (o.r > o.k) throw ConfigError("--r must be at most k");
  if (o.t == 0 || o.t > o.k) throw ConfigError("--t must be between 1 and k");
  if (o.jobs < 0) throw ConfigError("--jobs must be nonnegative");
  parse_format(o.format);
  if (!o.cache.empty()) set_table_cache_dir(std::filesystem::path(o.cache));
}

// "3,2,1"; "0" or "" is the empty partition.
KBoundedPartition parse_partition(int k, const std::string& text) {
  std::vector<int> parts;
  if (!text.empty() && text != "0") {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        const int v = std::stoi(item, &used);
        if (used != item.size()) throw std::invalid_argument(item);
        parts.push_back(v);
      } catch (const std::exception&) {
        throw ConfigError("malformed partition: " + text);
      }
    }
  }
  try {
    return KBoundedPartition(k, parts);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid partition: ") + e.what());
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string window_string(const AffinePermutation& w) {
  std::string out = "[";
  for (std::size_t i = 0; i < w.window().size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(w.window()[i]);
  }
  return out + "]";
}

std::string word_name(const AffinePermutation& w) {
  const auto word = reduced_word(w);
  return word.letters.empty() ? "e" : "s" + word.to_string();
}

void print_terms_csv(const std::map<KBoundedPartition, BigInt>& terms, std::ostream& out) {
  out << "parts,coeff\n";
  for (const auto& [lambda, c] : terms) out << csv_field(lambda.to_string()) << ',' << c << '\n';
}

// ---------------------------------------------------------------------------

int cmd_bij(const Options& o, std::ostream& out) {
  std::vector<KBoundedPartition> shapes;
  if (!o.lambda.empty()) {
    shapes.push_back(parse_partition(o.k, o.lambda));
  } else {
    shapes = bounded_partitions_up_to(o.k, o.max_size < 0 ? 4 : o.max_size);
  }
  const auto fmt = parse_format(o.format);
  bool all_ok = true;
  json rows = json::array();
  if (fmt == Format::Csv) out << "lambda,core,word,window,rd,ri,round_trip\n";
  for (const auto& lambda : shapes) {
    const auto core = bounded_to_core(lambda);
    const auto w = bounded_to_perm(lambda);
    const auto word = reading_word(lambda);
    const auto code_d = rd(w);
    const auto code_i = ri(w);
    const bool ok = core_to_bounded(core) == lambda && perm_to_core(w) == core &&
                    perm_to_bounded(w) == lambda && rd_inverse(code_d) == w &&
                    ri_inverse(code_i) == w && from_word(o.k, word.letters) == w;
    all_ok = all_ok && ok;
    switch (fmt) {
      case Format::Text:
        out << lambda.to_string() << " core=" << core.to_string() << " word=" << word.to_string()
            << " window=" << window_string(w) << " RD=" << code_d.to_string()
            << " RI=" << code_i.to_string() << " round-trip=" << (ok ? "ok" : "FAILED") << '\n';
        break;
      case Format::Csv:
        out << csv_field(lambda.to_string()) << ',' << csv_field(core.to_string()) << ','
            << word.to_string() << ',' << csv_field(window_string(w)) << ','
            << csv_field(code_d.to_string()) << ',' << csv_field(code_i.to_string()) << ','
            << (ok ? "ok" : "failed") << '\n';
        break;
      case Format::Json:
        rows.push_back({{"lambda", to_json(lambda)},
                        {"core", to_json(core)},
                        {"word", word.letters},
                        {"w", to_json(w)},
                        {"RD", to_json(code_d)},
                        {"RI", to_json(code_i)},
                        {"round_trip", ok}});
        break;
    }
  }
  if (fmt == Format::Json) out << rows.dump(2) << '\n';
  return all_ok ? kExitOk : kExitCounterexample;
}

int cmd_strips(const Options& o, std::ostream& out) {
  if (o.r < 0) throw ConfigError("strips requires --r");
  const auto lambda = parse_partition(o.k, o.lambda);
  const auto weak = weak_strip_list(lambda, o.r);
  const auto sv = setvalued_strips(bounded_to_perm(lambda), o.r);
  switch (parse_format(o.format)) {
    case Format::Text:
      out << "weak strips over " << lambda.to_string() << " of size " << o.r << ":\n";
      for (const auto& s : weak) {
        out << "  " << s.indices.to_string() << " -> " << s.top.to_string() << '\n';
      }
      out << "set-valued strips over " << lambda.to_string() << " of size " << o.r << ":\n";
      for (const auto& s : sv) {
        out << "  " << s.indices.to_string() << " -> " << perm_to_bounded(s.top).to_string()
            << '\n';
      }
      break;
    case Format::Csv:
      out << "kind,A,top\n";
      for (const auto& s : weak) {
        out << "weak," << csv_field(s.indices.to_string()) << ',' << csv_field(s.top.to_string())
            << '\n';
      }
      for (const auto& s : sv) {
        out << "set-valued," << csv_field(s.indices.to_string()) << ','
            << csv_field(perm_to_bounded(s.top).to_string()) << '\n';
      }
      break;
    case Format::Json: {
      json w = json::array();
      for (const auto& s : weak) w.push_back(to_json(s));
      json v = json::array();
      for (const auto& s : sv) {
        v.push_back({{"A", members_json(s.indices)}, {"top", to_json(perm_to_bounded(s.top))}});
      }
      out << json{{"lambda", to_json(lambda)}, {"r", o.r}, {"weak", w}, {"setvalued", v}}.dump(2)
          << '\n';
      break;
    }
  }
  return kExitOk;
}

int cmd_pieri(const Options& o, std::ostream& out) {
  if (o.r < 0) throw ConfigError("pieri requires --r");
  Basis basis;
  try {
    basis = parse_basis(o.basis);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const auto lambda = parse_partition(o.k, o.lambda);
  const auto result = multiply_h(SymElt::basis_element(lambda, basis), o.r);
  switch (parse_format(o.format)) {
    case Format::Text:
      out << "h_" << o.r << " * " << basis_name(basis) << lambda.to_string() << " = "
          << result.to_string() << '\n';
      break;
    case Format::Csv:
      print_terms_csv(result.terms(), out);
      break;
    case Format::Json:
      out << to_json(result).dump(2) << '\n';
      break;
  }
  return kExitOk;
}

int cmd_gtilde(const Options& o, std::ostream& out) {
  const auto lambda = parse_partition(o.k, o.lambda);
  const auto fmt = parse_format(o.format);
  const auto g = gtilde(lambda);
  bool agree = true;
  json doc{{"lambda", to_json(lambda)}, {"gtilde", to_json(g)}};
  std::ostringstream text;
  text << "gtilde" << lambda.to_string() << " = " << g.to_string() << '\n';
  if (o.r >= 0) {
    const auto signed_form = gtilde_times_htilde(lambda, o.r);
    const auto union_form = gtilde_pieri(lambda, o.r);
    const auto ie = gtilde_pieri_ie(lambda, o.r);
    const auto expanded = ie.expand();
    agree = signed_form == union_form && expanded == union_form;
    text << "signed pieri:        " << signed_form.to_string() << '\n'
         << "interval union:      " << union_form.to_string() << '\n'
         << "inclusion-exclusion: " << ie.to_string() << '\n'
         << "  expanded:          " << expanded.to_string() << '\n'
         << "agree: " << (agree ? "yes" : "NO") << '\n';
    doc["r"] = o.r;
    doc["signed"] = to_json(signed_form);
    doc["interval_union"] = to_json(union_form);
    doc["inclusion_exclusion"] = to_json(ie);
    doc["expanded"] = to_json(expanded);
    doc["agree"] = agree;
  }
  if (o.t > 0) {
    const bool fac = gtilde_factorize_check(lambda, o.t);
    agree = agree && fac;
    text << "rectangle factorization t=" << o.t << ": " << (fac ? "holds" : "FAILS") << '\n';
    doc["t"] = o.t;
    doc["factorization"] = fac;
  }
  switch (fmt) {
    case Format::Text:
      out << text.str();
      break;
    case Format::Json:
      out << doc.dump(2) << '\n';
      break;
    case Format::Csv:
      print_terms_csv(g.terms(), out);
      break;
  }
  return agree ? kExitOk : kExitCounterexample;
}

int emit_report(const VerifyReport& report, Format fmt, std::ostream& out) {
  switch (fmt) {
    case Format::Text:
      out << report.to_text();
      break;
    case Format::Json:
      out << report.to_json().dump(2) << '\n';
      break;
    case Format::Csv:
      out << "check,instances,failures,uncertified\n";
      for (const auto& [name, t] : report.results.tallies()) {
        out << name << ',' << t.instances << ',' << t.failures << ',' << t.skipped << '\n';
      }
      for (const auto& c : report.results.counterexamples()) {
        out << "# counterexample " << c.check << ' ' << c.witness.dump() << '\n';
      }
      break;
  }
  return report.ok() ? kExitOk : kExitCounterexample;
}

int cmd_verify(const std::string& which, const Options& o, std::ostream& out) {
  const auto fmt = parse_format(o.format);
  auto size = [&](int fallback) { return o.max_size < 0 ? fallback : o.max_size; };
  if (which == "pieri-sum") return emit_report(verify_pieri_sum(o.k, size(6), o.jobs), fmt, out);
  if (which == "factorization") {
    return emit_report(verify_factorization(o.k, size(5), o.jobs), fmt, out);
  }
  if (which == "order-props") {
    return emit_report(verify_order_props(o.k, size(o.k <= 2 ? 6 : 5), o.jobs), fmt, out);
  }
  if (which == "fibers") return emit_report(verify_fibers(o.k, size(6), o.jobs), fmt, out);
  throw ConfigError("unknown verify target: " + which);
}

int cmd_table1(const Options& o, std::ostream& out) {
  const auto u_shape = parse_partition(o.k, o.lambda);
  const auto u = bounded_to_perm(u_shape);
  std::optional<AffinePermutation> w;
  if (!o.w.empty()) w = bounded_to_perm(parse_partition(o.k, o.w));
  const auto rows = fiber_table(u, w);
  switch (parse_format(o.format)) {
    case Format::Text:
      out << "u = " << word_name(u) << " " << u_shape.to_string();
      if (w) out << ", restricted to v <= " << word_name(*w);
      out << '\n';
      for (const auto& row : rows) {
        out << "  " << word_name(row.v) << "  " << row.a.to_string() << "  "
            << (row.sign > 0 ? '+' : '-') << '\n';
      }
      break;
    case Format::Csv:
      out << "v,window,A,sign\n";
      for (const auto& row : rows) {
        out << word_name(row.v) << ',' << csv_field(window_string(row.v)) << ','
            << csv_field(row.a.to_string()) << ',' << row.sign << '\n';
      }
      break;
    case Format::Json: {
      json arr = json::array();
      for (const auto& row : rows) {
        arr.push_back({{"v", to_json(row.v)},
                       {"word", reduced_word(row.v).letters},
                       {"A", members_json(row.a)},
                       {"sign", row.sign}});
      }
      json doc{{"u", to_json(u)}, {"rows", arr}};
      if (w) doc["w"] = to_json(*w);
      out << doc.dump(2) << '\n';
      break;
    }
  }
  return kExitOk;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--k", o.k, "rank k (1..8)")->required();
  sub->add_option("--format", o.format, "text, json or csv");
  sub->add_option("--jobs", o.jobs, "worker threads (0 = all cores)");
  sub->add_option("--cache", o.cache, "transition table cache directory");
  sub->add_option("--max-size", o.max_size, "size or length cap (at most 12)");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"K-k-Schur and affine symmetric group toolkit", "kks"};
  app.require_subcommand(1);
  Options o;

  auto* bij = app.add_subcommand("bij", "bounded partition / core / permutation / k-code table");
  add_common(bij, o);
  bij->add_option("--lambda", o.lambda, "k-bounded partition, e.g. 3,2,1 (0 = empty)");

  auto* strips = app.add_subcommand("strips", "weak and set-valued strips over a shape");
  add_common(strips, o);
  strips->add_option("--lambda", o.lambda, "k-bounded partition");
  strips->add_option("--r", o.r, "strip size")->required();

  auto* pieri = app.add_subcommand("pieri", "h_r times a basis element");
  add_common(pieri, o);
  pieri->add_option("--lambda", o.lambda, "k-bounded partition");
  pieri->add_option("--r", o.r, "degree of h_r")->required();
  pieri->add_option("--basis", o.basis, "g, ks or h");

  auto* gt = app.add_subcommand("gtilde", "strong-order sums and their Pieri forms");
  add_common(gt, o);
  gt->add_option("--lambda", o.lambda, "k-bounded partition");
  gt->add_option("--r", o.r, "degree of htilde_r");
  gt->add_option("--t", o.t, "rectangle width for the factorization check");

  auto* verify = app.add_subcommand("verify", "exhaustive verification sweeps");
  verify->require_subcommand(1);
  std::string verify_target;
  for (const char* name : {"pieri-sum", "factorization", "order-props", "fibers"}) {
    auto* sub = verify->add_subcommand(name, std::string("sweep: ") + name);
    add_common(sub, o);
    sub->callback([&verify_target, name] { verify_target = name; });
  }

  auto* table1 = app.add_subcommand("table1", "fiber/sign table for u = w_lambda");
  add_common(table1, o);
  table1->add_option("--lambda", o.lambda, "shape of u");
  table1->add_option("--w", o.w, "shape of w; keeps rows with v <= w_w");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  try {
    validate(o);
    if (bij->parsed()) return cmd_bij(o, out);
    if (strips->parsed()) return cmd_strips(o, out);
    if (pieri->parsed()) return cmd_pieri(o, out);
    if (gt->parsed()) return cmd_gtilde(o, out);
    if (verify->parsed()) return cmd_verify(verify_target, o, out);
    if (table1->parsed()) return cmd_table1(o, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const RankMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitCounterexample;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ResourceCapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  err << "error: no command\n";
  return kExitInvalid;
}

}  // namespace kks
