// isoforge: tables, blocks and perfect isometry certificates
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "isoforge/blocks.hpp"
#include "isoforge/isometry.hpp"
#include "isoforge/parallel.hpp"
#include "isoforge/tables.hpp"

using json = nlohmann::ordered_json;
using namespace isoforge;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr const char* kSchema = "isoforge-certificate/1";

struct BadRequest : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GroupArgs {
  std::string family;
  int n = -1, p = -1, w = -1, l = -1;
};

const CharTable& group_table(const GroupArgs& g) {
  const std::string& f = g.family;
  if (f == "sn" || f == "an" || f == "tilde-sn" || f == "tilde-an" || f == "dn" || f == "bn") {
    if (g.n < 0) throw BadRequest("--n must be a nonnegative integer for " + f);
    return cached_table(f, g.n);
  }
  if (f == "gpw" || f == "hpw") {
    if (g.p != 2 && g.p != 3) throw BadRequest("--p must be 2 or 3 for " + f);
    if (f == "hpw" && g.p != 3) throw BadRequest("hpw is available for p = 3");
    if (g.w < 0) throw BadRequest("--w must be a nonnegative integer");
    return cached_table(f, g.p, g.w);
  }
  if (f == "wreath") {
    if (g.l != 1 && g.l != 2 && g.l != 3 && g.l != 4 && g.l != 6) throw BadRequest("--l must be one of 1,2,3,4,6");
    if (g.w < 0) throw BadRequest("--w must be a nonnegative integer");
    return cached_table("wreath", g.l, g.w);
  }
  throw BadRequest("unknown family '" + f + "'");
}

json params_json(const CharTable& t) {
  json j = json::object();
  for (auto& [k, v] : t.params) j[k] = v;
  return j;
}

json table_json(const CharTable& t) {
  json j;
  j["family"] = t.family;
  j["params"] = params_json(t);
  j["order"] = t.order;
  json cls = json::array();
  for (auto& c : t.classes) cls.push_back({{"label", c.key()}, {"central_order", c.central_order}});
  j["classes"] = cls;
  json chars = json::array();
  for (int a = 0; a < t.num_chars(); ++a) {
    json row = json::array();
    for (auto& v : t.values[a]) row.push_back(v.str());
    chars.push_back({{"label", t.chars[a].key()}, {"spin", t.chars[a].spin}, {"values", row}});
  }
  j["characters"] = chars;
  return j;
}

std::string table_text(const CharTable& t) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> head{""};
  for (auto& c : t.classes) head.push_back(c.key());
  cells.push_back(head);
  for (int a = 0; a < t.num_chars(); ++a) {
    std::vector<std::string> row{t.chars[a].key()};
    for (auto& v : t.values[a]) row.push_back(v.str());
    cells.push_back(row);
  }
  std::vector<size_t> width(head.size(), 0);
  for (auto& r : cells)
    for (size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  std::ostringstream os;
  os << t.family << " order " << t.order << "\n";
  for (auto& r : cells) {
    for (size_t i = 0; i < r.size(); ++i) {
      if (i) os << "  ";
      os << (i == 0 ? std::left : std::right) << std::setw(static_cast<int>(width[i])) << r[i];
    }
    os << "\n";
  }
  return os.str();
}

json block_json(const CharTable& t, const Block& b) {
  json chars = json::array();
  for (int a : b.chars) chars.push_back(t.chars[a].key());
  json j{{"core", b.core}, {"weight", b.weight}};
  if (b.sign != 0) j["sign"] = b.sign;
  j["characters"] = chars;
  return j;
}

json check_json(const CheckResult& c) {
  json w = json::array();
  for (auto& x : c.witnesses)
    w.push_back({{"check", x.check}, {"x", x.x}, {"y", x.y}, {"value", x.value}, {"detail", x.detail}});
  return {{"ran", c.ran}, {"pass", c.ran ? c.pass : true}, {"witnesses", w}};
}

json request_json(const IsometryRequest& q, const std::string& mode) {
  json j{{"kind", q.kind}, {"p", q.p}};
  if (q.w >= 0) j["w"] = q.w;
  if (q.n >= 0) j["n"] = q.n;
  if (q.kind == "couronne") j["l"] = q.l;
  j["core1"] = q.core1;
  j["core2"] = q.core2;
  if (!q.weights.empty()) j["weights"] = q.weights;
  if (!q.cover1.empty()) j["cover1"] = q.cover1;
  j["mode"] = mode;
  return j;
}

json side_json(const CharTable& t, const std::vector<int>& block) {
  json b = json::array();
  for (int a : block) b.push_back(t.chars[a].key());
  return {{"family", t.family}, {"params", params_json(t)}, {"block", b}};
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw BadRequest("cannot write " + out);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"isoforge: character tables, blocks and perfect isometries"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  GroupArgs g;
  std::string format = "json", out;
  auto* table = app.add_subcommand("table", "print a character table");
  table->add_option("--family", g.family, "sn an tilde-sn tilde-an bn dn wreath gpw hpw")->required();
  table->add_option("--n", g.n);
  table->add_option("--p", g.p);
  table->add_option("--w", g.w);
  table->add_option("--l", g.l);
  table->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
  table->add_option("--out", out);

  GroupArgs gb;
  int bp = -1;
  std::string classes = "p-regular";
  auto* blocks = app.add_subcommand("blocks", "block partition from restricted inner products");
  blocks->add_option("--family", gb.family)->required();
  blocks->add_option("--n", gb.n);
  blocks->add_option("--w", gb.w);
  blocks->add_option("--l", gb.l);
  blocks->add_option("--p", bp)->required();
  blocks->add_option("--classes", classes);
  blocks->add_option("--out", out);

  IsometryRequest q;
  std::string mode;
  bool timing = false, embed = false;
  auto* ver = app.add_subcommand("verify", "build an isometry and certify it");
  ver->add_option("--kind", q.kind)->required();
  ver->add_option("--p", q.p);
  ver->add_option("--w", q.w);
  ver->add_option("--n", q.n);
  ver->add_option("--l", q.l);
  ver->add_option("--core1", q.core1);
  ver->add_option("--core2", q.core2);
  ver->add_option("--weights", q.weights);
  ver->add_option("--cover1", q.cover1);
  ver->add_option("--mode", mode)->check(CLI::IsMember({"generalized", "kor", "broue"}));
  ver->add_flag("--timing", timing, "include wall time (breaks byte determinism)");
  ver->add_flag("--embed-tables", embed);
  ver->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*table) {
      const CharTable& t = group_table(g);
      emit(format == "text" ? table_text(t) : table_json(t).dump(2) + "\n", out);
      return 0;
    }
    if (*blocks) {
      gb.p = bp;
      if (bp < 2) throw BadRequest("--p must be a prime");
      static const std::vector<std::string> preds = {"p-regular", "spin-C", "brgr-Cprime", "osima-Cprime",
                                                     "fh-regular", "all"};
      if (std::find(preds.begin(), preds.end(), classes) == preds.end())
        throw BadRequest("unknown class predicate '" + classes + "'");
      const CharTable& t = group_table(gb);
      auto kb = kor_blocks(t, class_subset(t, classes, bp));
      auto th = theoretical_blocks(t, bp);
      json bl = json::array();
      for (auto& b : th.blocks) bl.push_back(block_json(t, b));
      json gram = json::array();
      for (auto& b : kb.blocks) {
        json c = json::array();
        for (int a : b.chars) c.push_back(t.chars[a].key());
        gram.push_back(c);
      }
      json j{{"family", t.family}, {"params", params_json(t)}, {"p", bp}, {"classes", classes},
             {"blocks", bl},       {"gram_blocks", gram},       {"agreement", same_partition(kb, th)}};
      emit(j.dump(2) + "\n", out);
      return 0;
    }
    if (*ver) {
      Isometry iso;
      try {
        iso = build_isometry(q);
      } catch (const std::invalid_argument& e) {
        throw BadRequest(e.what());
      }
      std::string m = mode.empty() ? iso.mode : mode;
      VerificationReport r = verify(iso, m);
      json map = json::array();
      for (size_t k = 0; k < iso.src_block.size(); ++k)
        map.push_back({{"source", iso.source->chars[iso.src_block[k]].key()},
                       {"sign", iso.sign[k]},
                       {"target", iso.target->chars[iso.image[k]].key()}});
      json cert;
      cert["schema"] = kSchema;
      cert["request"] = request_json(q, m);
      cert["environment"] = {{"version", kVersion},
                             {"determinism", "exact arithmetic; output does not depend on ISOFORGE_THREADS"}};
      cert["isometry"] = {{"theorem_mode", iso.mode},
                          {"source", side_json(*iso.source, iso.src_block)},
                          {"target", side_json(*iso.target, iso.dst_block)},
                          {"map", map}};
      json rep;
      rep["mode"] = r.mode;
      rep["pass"] = r.ok();
      rep["sizes"] = {{"source_classes", r.source_classes},
                      {"target_classes", r.target_classes},
                      {"block", r.block_size}};
      rep["mixed_vanishing"] = check_json(r.mixed_vanishing);
      rep["broue_integrality"] = check_json(r.broue_integrality);
      rep["kor_gram"] = check_json(r.kor_gram);
      rep["r_commutation"] = check_json(r.r_commutation);
      if (timing) rep["seconds"] = r.seconds;
      cert["report"] = rep;
      if (embed) cert["artifacts"] = {{"source_table", table_json(*iso.source)}, {"target_table", table_json(*iso.target)}};
      emit(cert.dump(2) + "\n", out);
      return r.ok() ? 0 : 1;
    }
  } catch (const BadRequest& e) {
    std::cerr << "isoforge: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "isoforge: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
