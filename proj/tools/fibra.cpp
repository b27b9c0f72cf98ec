#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fibra/fibra.hpp"

namespace {

enum class Format { Text, Machine };

int emit(const fibra::Report& r, Format fmt) {
  std::cout << (fmt == Format::Machine ? r.machine() : r.text());
  return r.exit_code;
}

const fibra::FiberGraph& need_fiber(const fibra::Document& d, const std::string& cmd) {
  if (d.kind != fibra::DocumentKind::Fiber)
    throw fibra::InputError(cmd + " needs a fiber document, got " + fibra::to_string(d.kind));
  return d.fiber;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fibra: exact invariants and inequality verdicts for degenerate fibers"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "text";
  bool trace = false;
  std::string corpus_dir;
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"text", "machine"}));
  app.add_flag("--trace", trace, "include step traces");
  app.add_option("--corpus", corpus_dir, "corpus directory (overrides FIBRA_CORPUS_DIR)");

  std::string path;
  std::optional<int> order;

  auto* inv = app.add_subcommand("invariants", "per-fiber invariants c1^2, c2, chi_F, c_-1");
  inv->add_option("file", path)->required();
  inv->add_option("--order", order, "base change order (default: minimal admissible)");

  auto* bc = app.add_subcommand("basechange", "semistable reduction by cyclic base change");
  bc->add_option("file", path)->required();
  bc->add_option("--order", order, "base change order");

  auto* rs = app.add_subcommand("resolve", "embedded resolution of F_red");
  rs->add_option("file", path)->required();

  auto* ck = app.add_subcommand("check", "inequality verdicts for a fibration or algebraic point");
  ck->add_option("file", path)->required();

  std::string kind;
  int r_value = 0;
  auto* mi = app.add_subcommand("miyaoka", "Miyaoka m-value of an ADE configuration");
  mi->add_option("--kind", kind)->required()->check(CLI::IsMember({"A", "D", "E"}));
  mi->add_option("--r", r_value)->required();

  std::string action;
  bool write_golden = false;
  auto* co = app.add_subcommand("corpus", "run or list the built-in corpus");
  co->add_option("action", action)->required()->check(CLI::IsMember({"run", "list"}));
  co->add_flag("--write-golden", write_golden, "regenerate golden files from this run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const Format fmt = format == "machine" ? Format::Machine : Format::Text;
  try {
    if (*inv) return emit(fibra::report_invariants(need_fiber(fibra::load_document(path), "invariants"), order, trace), fmt);
    if (*bc) return emit(fibra::report_basechange(need_fiber(fibra::load_document(path), "basechange"), order, trace), fmt);
    if (*rs) return emit(fibra::report_resolve(need_fiber(fibra::load_document(path), "resolve"), trace), fmt);
    if (*ck) return emit(fibra::report_check(fibra::load_document(path)), fmt);
    if (*mi) return emit(fibra::report_miyaoka(fibra::parse_ade_kind(kind), r_value), fmt);
    if (*co) {
      const auto dir = corpus_dir.empty() ? fibra::default_corpus_dir() : std::filesystem::path(corpus_dir);
      if (action == "list") return emit(fibra::report_corpus_list(dir), fmt);
      return emit(fibra::report_corpus_run(dir, write_golden), fmt);
    }
  } catch (const fibra::EngineBugError& e) {
    std::cerr << "engine error: " << e.what() << "\n";
    return 1;
  } catch (const fibra::UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 2;
  } catch (const fibra::Error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
