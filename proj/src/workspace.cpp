#include "qcat/workspace.hpp"

#include <json.hpp>

namespace qcat {

using json = nlohmann::ordered_json;

namespace {

struct Collector {
  std::vector<std::string> errors;
  void add(const std::string& where, const std::string& what) { errors.push_back(where + ": " + what); }
};

bool valid_label(const std::string& s) {
  if (s.empty()) return false;
  if (s[0] == '#') return false;
  for (char c : s)
    if (c == ',' || c == '(' || c == ')') return false;
  return true;
}

ExprPtr parse_expr(const json& j, const Workspace& ws, Collector& err, const std::string& where) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "id") return Expr::make_id();
    if (s == "connected_components") return Expr::make_connected_components();
    if (s == "triple_diag") return Expr::make_triple_diag();
    err.add(where, "unknown endofunctor '" + s + "'");
    return nullptr;
  }
  if (!j.is_object() || j.size() != 1) {
    err.add(where, "endofunctor must be a string or a one-key object");
    return nullptr;
  }
  const std::string key = j.begin().key();
  const json& v = j.begin().value();
  if (key == "const") {
    if (!v.is_string()) {
      err.add(where, "const needs a category name");
      return nullptr;
    }
    auto it = ws.categories.find(v.get<std::string>());
    if (it == ws.categories.end()) {
      err.add(where, "const references unknown category '" + v.get<std::string>() + "'");
      return nullptr;
    }
    return Expr::make_const(v.get<std::string>(), it->second);
  }
  if (key == "sum" || key == "tensor") {
    if (!v.is_array() || v.size() != 2) {
      err.add(where, key + " needs a two-element array");
      return nullptr;
    }
    ExprPtr a = parse_expr(v[0], ws, err, where);
    ExprPtr b = parse_expr(v[1], ws, err, where);
    if (!a || !b) return nullptr;
    return key == "sum" ? Expr::make_sum(a, b) : Expr::make_tensor(a, b);
  }
  if (key == "dual" || key == "lower" || key == "upper" || key == "power") {
    ExprPtr a = parse_expr(v, ws, err, where);
    if (!a) return nullptr;
    if (key == "dual") return Expr::make_dual(a);
    if (key == "lower") return Expr::make_lower(a);
    if (key == "upper") return Expr::make_upper(a);
    return Expr::make_power(a);
  }
  err.add(where, "unknown endofunctor node '" + key + "'");
  return nullptr;
}

json emit_expr(const Expr& e) {
  switch (e.node) {
    case Expr::Node::id:
      return "id";
    case Expr::Node::connected_components:
      return "connected_components";
    case Expr::Node::triple_diag:
      return "triple_diag";
    case Expr::Node::constant:
      return json{{"const", e.constant_name}};
    case Expr::Node::sum:
      return json{{"sum", json::array({emit_expr(*e.child0), emit_expr(*e.child1)})}};
    case Expr::Node::tensor:
      return json{{"tensor", json::array({emit_expr(*e.child0), emit_expr(*e.child1)})}};
    case Expr::Node::dual:
      return json{{"dual", emit_expr(*e.child0)}};
    case Expr::Node::lower:
      return json{{"lower", emit_expr(*e.child0)}};
    case Expr::Node::upper:
      return json{{"upper", emit_expr(*e.child0)}};
    case Expr::Node::power:
      return json{{"power", emit_expr(*e.child0)}};
  }
  return "id";
}

FormulaPtr parse_formula(const json& j, const Workspace& ws, Collector& err, const std::string& where) {
  if (!j.is_object() || j.size() != 1) {
    err.add(where, "formula must be a one-key object");
    return nullptr;
  }
  const std::string key = j.begin().key();
  const json& v = j.begin().value();
  if (key == "atom") {
    if (!v.is_string()) {
      err.add(where, "atom needs a name");
      return nullptr;
    }
    return Formula::make_atom(v.get<std::string>());
  }
  if (key == "const") {
    if (!v.is_string()) {
      err.add(where, "const needs a value string");
      return nullptr;
    }
    try {
      return Formula::make_const(ws.q->parse_value(v.get<std::string>()));
    } catch (const QcatError& e) {
      err.add(where, e.what());
      return nullptr;
    }
  }
  if (key == "meet" || key == "join") {
    if (!v.is_array()) {
      err.add(where, key + " needs an array");
      return nullptr;
    }
    std::vector<FormulaPtr> kids;
    for (const auto& kj : v) {
      FormulaPtr k = parse_formula(kj, ws, err, where);
      if (!k) return nullptr;
      kids.push_back(std::move(k));
    }
    return key == "meet" ? Formula::make_meet(std::move(kids)) : Formula::make_join(std::move(kids));
  }
  if (key == "nabla") {
    if (!v.is_array()) {
      err.add(where, "nabla needs an array of {formula, weight}");
      return nullptr;
    }
    std::vector<std::pair<FormulaPtr, QValue>> weights;
    for (const auto& wj : v) {
      if (!wj.is_object() || !wj.contains("formula") || !wj.contains("weight")) {
        err.add(where, "nabla entries need 'formula' and 'weight'");
        return nullptr;
      }
      FormulaPtr k = parse_formula(wj["formula"], ws, err, where);
      if (!k) return nullptr;
      try {
        weights.emplace_back(std::move(k), ws.q->parse_value(wj["weight"].get<std::string>()));
      } catch (const QcatError& e) {
        err.add(where, e.what());
        return nullptr;
      }
    }
    return Formula::make_nabla(std::move(weights));
  }
  err.add(where, "unknown formula node '" + key + "'");
  return nullptr;
}

json emit_formula(const Formula& f) {
  switch (f.node) {
    case Formula::Node::atom:
      return json{{"atom", f.atom}};
    case Formula::Node::constant:
      return json{{"const", f.value.str()}};
    case Formula::Node::meet:
    case Formula::Node::join: {
      json arr = json::array();
      for (const auto& k : f.children) arr.push_back(emit_formula(*k));
      return json{{f.node == Formula::Node::meet ? "meet" : "join", arr}};
    }
    case Formula::Node::nabla: {
      json arr = json::array();
      for (const auto& [k, w] : f.weights)
        arr.push_back(json{{"formula", emit_formula(*k)}, {"weight", w.str()}});
      return json{{"nabla", arr}};
    }
  }
  return json{};
}

}  // namespace

LaxSquare Workspace::resolve_square(const std::string& name) const {
  auto it = squares.find(name);
  if (it == squares.end()) throw QcatError("unknown square '" + name + "'");
  LaxSquare sq;
  sq.p0 = functors.at(it->second.p0).f;
  sq.p1 = functors.at(it->second.p1).f;
  sq.f = functors.at(it->second.f).f;
  sq.g = functors.at(it->second.g).f;
  return sq;
}

Workspace parse_workspace(const std::string& text, const EndoOptions& opts) {
  Collector err;
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError({std::string("json: ") + e.what()});
  }
  if (!root.is_object()) throw ParseError({"workspace must be a json object"});

  Workspace ws;

  // quantale
  if (!root.contains("quantale") || !root["quantale"].is_object() ||
      !root["quantale"].contains("kind")) {
    throw ParseError({"quantale: missing {\"quantale\": {\"kind\": ...}}"});
  }
  ws.qspec.kind = root["quantale"]["kind"].get<std::string>();
  if (root["quantale"].contains("n")) ws.qspec.n = root["quantale"]["n"].get<int>();
  try {
    ws.q = Quantale::make(ws.qspec);
  } catch (const QcatError& e) {
    throw ParseError({std::string("quantale: ") + e.what()});
  }

  auto parse_value = [&](const json& j, const std::string& where) -> QValue {
    try {
      if (!j.is_string()) throw QcatError("values must be strings like \"p/q\"");
      return ws.q->parse_value(j.get<std::string>());
    } catch (const QcatError& e) {
      err.add(where, e.what());
      return ws.q->bot();
    }
  };

  if (root.contains("categories")) {
    for (const auto& [name, cj] : root["categories"].items()) {
      std::string where = "category '" + name + "'";
      if (!cj.contains("objects") || !cj.contains("hom")) {
        err.add(where, "needs 'objects' and 'hom'");
        continue;
      }
      std::vector<std::string> objects;
      for (const auto& oj : cj["objects"]) {
        std::string label = oj.get<std::string>();
        if (!valid_label(label))
          err.add(where, "bad object label '" + label + "' (nonempty, no ',()', no leading '#')");
        objects.push_back(std::move(label));
      }
      for (size_t i = 0; i + 1 < objects.size(); ++i)
        for (size_t j = i + 1; j < objects.size(); ++j)
          if (objects[i] == objects[j]) err.add(where, "duplicate object label '" + objects[i] + "'");
      const json& hj = cj["hom"];
      if (!hj.is_array() || hj.size() != objects.size()) {
        err.add(where, "hom matrix must have one row per object");
        continue;
      }
      std::vector<std::vector<QValue>> hom;
      bool shape_ok = true;
      for (const auto& row : hj) {
        if (!row.is_array() || row.size() != objects.size()) {
          err.add(where, "hom matrix is not square");
          shape_ok = false;
          break;
        }
        std::vector<QValue> r;
        for (const auto& v : row) r.push_back(parse_value(v, where));
        hom.push_back(std::move(r));
      }
      if (!shape_ok) continue;
      auto cat = std::make_shared<VCat>();
      cat->q = ws.q;
      cat->objects = std::move(objects);
      cat->hom = std::move(hom);
      Report rep = validate_category(*cat);
      for (const auto& v : rep.violations) err.add(where, v);
      ws.categories.emplace(name, std::move(cat));
    }
  }

  auto find_cat = [&](const std::string& name, const std::string& where) -> CatPtr {
    auto it = ws.categories.find(name);
    if (it == ws.categories.end()) {
      err.add(where, "unknown category '" + name + "'");
      return nullptr;
    }
    return it->second;
  };

  if (root.contains("functors")) {
    for (const auto& [name, fj] : root["functors"].items()) {
      std::string where = "functor '" + name + "'";
      if (!fj.contains("src") || !fj.contains("dst") || !fj.contains("map")) {
        err.add(where, "needs 'src', 'dst' and 'map'");
        continue;
      }
      Workspace::FunctorEntry entry;
      entry.src = fj["src"].get<std::string>();
      entry.dst = fj["dst"].get<std::string>();
      CatPtr src = find_cat(entry.src, where);
      CatPtr dst = find_cat(entry.dst, where);
      if (!src || !dst) continue;
      entry.f.src = src;
      entry.f.dst = dst;
      entry.f.map.assign(src->size(), 0);
      std::vector<bool> given(src->size(), false);
      bool ok = true;
      for (const auto& [from, to] : fj["map"].items()) {
        int a = src->index_of(from);
        int b = dst->index_of(to.get<std::string>());
        if (a < 0) {
          err.add(where, "map key '" + from + "' is not an object of " + entry.src);
          ok = false;
          continue;
        }
        if (b < 0) {
          err.add(where, "map value '" + to.get<std::string>() + "' is not an object of " + entry.dst);
          ok = false;
          continue;
        }
        entry.f.map[a] = b;
        given[a] = true;
      }
      for (size_t a = 0; a < src->size(); ++a)
        if (!given[a]) {
          err.add(where, "map is missing object '" + src->objects[a] + "'");
          ok = false;
        }
      if (!ok) continue;
      Report rep = validate_functor(entry.f);
      for (const auto& v : rep.violations) err.add(where, v);
      ws.functors.emplace(name, std::move(entry));
    }
  }

  if (root.contains("modules")) {
    for (const auto& [name, mj] : root["modules"].items()) {
      std::string where = "module '" + name + "'";
      if (!mj.contains("src") || !mj.contains("dst") || !mj.contains("matrix")) {
        err.add(where, "needs 'src', 'dst' and 'matrix'");
        continue;
      }
      Workspace::ModuleEntry entry;
      entry.src = mj["src"].get<std::string>();
      entry.dst = mj["dst"].get<std::string>();
      CatPtr src = find_cat(entry.src, where);
      CatPtr dst = find_cat(entry.dst, where);
      if (!src || !dst) continue;
      const json& mx = mj["matrix"];
      if (!mx.is_array() || mx.size() != dst->size()) {
        err.add(where, "matrix must have one row per object of '" + entry.dst + "'");
        continue;
      }
      std::vector<std::vector<QValue>> matrix;
      bool ok = true;
      for (const auto& row : mx) {
        if (!row.is_array() || row.size() != src->size()) {
          err.add(where, "matrix must have one column per object of '" + entry.src + "'");
          ok = false;
          break;
        }
        std::vector<QValue> r;
        for (const auto& v : row) r.push_back(parse_value(v, where));
        matrix.push_back(std::move(r));
      }
      if (!ok) continue;
      entry.m.src = src;
      entry.m.dst = dst;
      entry.m.matrix = std::move(matrix);
      Report rep = validate_module(entry.m);
      for (const auto& v : rep.violations) err.add(where, v);
      ws.modules.emplace(name, std::move(entry));
    }
  }

  if (root.contains("endofunctors")) {
    for (const auto& [name, ej] : root["endofunctors"].items()) {
      ExprPtr e = parse_expr(ej, ws, err, "endofunctor '" + name + "'");
      if (e) ws.endofunctors.emplace(name, std::move(e));
    }
  }

  if (root.contains("squares")) {
    for (const auto& [name, sj] : root["squares"].items()) {
      std::string where = "square '" + name + "'";
      Workspace::SquareEntry entry;
      bool ok = true;
      for (const auto& [field, target] :
           std::initializer_list<std::pair<const char*, std::string*>>{
               {"p0", &entry.p0}, {"p1", &entry.p1}, {"f", &entry.f}, {"g", &entry.g}}) {
        if (!sj.contains(field)) {
          err.add(where, std::string("missing '") + field + "'");
          ok = false;
          continue;
        }
        *target = sj[field].get<std::string>();
        if (!ws.functors.count(*target)) {
          err.add(where, "unknown functor '" + *target + "'");
          ok = false;
        }
      }
      if (!ok) continue;
      ws.squares.emplace(name, entry);
      LaxSquare sq;
      sq.p0 = ws.functors.at(entry.p0).f;
      sq.p1 = ws.functors.at(entry.p1).f;
      sq.f = ws.functors.at(entry.f).f;
      sq.g = ws.functors.at(entry.g).f;
      Report rep = validate_square(sq);
      for (const auto& v : rep.violations) err.add(where, v);
    }
  }

  if (root.contains("coalgebras")) {
    for (const auto& [name, cj] : root["coalgebras"].items()) {
      std::string where = "coalgebra '" + name + "'";
      if (!cj.contains("space") || !cj.contains("functor") || !cj.contains("xi")) {
        err.add(where, "needs 'space', 'functor' and 'xi'");
        continue;
      }
      Workspace::CoalgebraEntry entry;
      entry.space = cj["space"].get<std::string>();
      entry.functor = cj["functor"].get<std::string>();
      CatPtr space = find_cat(entry.space, where);
      auto fit = ws.endofunctors.find(entry.functor);
      if (fit == ws.endofunctors.end()) {
        err.add(where, "unknown endofunctor '" + entry.functor + "'");
        continue;
      }
      if (!space) continue;
      CatPtr tx;
      try {
        tx = apply_to_category_ptr(fit->second, space, opts);
      } catch (const QcatError& e) {
        err.add(where, e.what());
        continue;
      }
      std::vector<int> xi(space->size(), -1);
      bool ok = true;
      for (const auto& [state, target] : cj["xi"].items()) {
        int x = space->index_of(state);
        if (x < 0) {
          err.add(where, "xi key '" + state + "' is not a state");
          ok = false;
          continue;
        }
        std::string tl = target.get<std::string>();
        int ti = -1;
        if (!tl.empty() && tl[0] == '#') {
          try {
            ti = std::stoi(tl.substr(1));
          } catch (...) {
            ti = -1;
          }
          if (ti < 0 || static_cast<size_t>(ti) >= tx->size()) {
            err.add(where, "xi index '" + tl + "' out of range (T has " +
                               std::to_string(tx->size()) + " objects)");
            ok = false;
            continue;
          }
        } else {
          ti = tx->index_of(tl);
          if (ti < 0) {
            err.add(where, "xi value '" + tl + "' is not an object of the applied functor");
            ok = false;
            continue;
          }
        }
        xi[x] = ti;
      }
      for (size_t x = 0; x < space->size(); ++x)
        if (xi[x] < 0 && ok) {
          err.add(where, "xi is missing state '" + space->objects[x] + "'");
          ok = false;
        }
      if (!ok) continue;
      entry.c.space = space;
      entry.c.functor = fit->second;
      entry.c.xi.src = space;
      entry.c.xi.dst = tx;
      entry.c.xi.map = std::move(xi);
      Report rep = validate_functor(entry.c.xi);
      for (const auto& v : rep.violations)
        err.add(where, "transition structure is not a V-functor: " + v);
      ws.coalgebras.emplace(name, std::move(entry));
    }
  }

  if (root.contains("models")) {
    for (const auto& [name, mj] : root["models"].items()) {
      std::string where = "model '" + name + "'";
      if (!mj.contains("coalgebra")) {
        err.add(where, "needs 'coalgebra'");
        continue;
      }
      Workspace::ModelEntry entry;
      entry.coalgebra = mj["coalgebra"].get<std::string>();
      auto cit = ws.coalgebras.find(entry.coalgebra);
      if (cit == ws.coalgebras.end()) {
        err.add(where, "unknown coalgebra '" + entry.coalgebra + "'");
        continue;
      }
      entry.m.coalg = cit->second.c;
      bool close = mj.contains("closure") && mj["closure"].get<bool>();
      const VCat& x = *entry.m.coalg.space;
      if (mj.contains("valuation")) {
        for (const auto& [atom, tj] : mj["valuation"].items()) {
          std::vector<QValue> table(x.size(), ws.q->bot());
          for (const auto& [state, v] : tj.items()) {
            int xi = x.index_of(state);
            if (xi < 0) {
              err.add(where, "valuation of '" + atom + "' names unknown state '" + state + "'");
              continue;
            }
            table[xi] = parse_value(v, where);
          }
          if (close) table = up_closure(x, table);
          entry.m.valuation.emplace(atom, std::move(table));
        }
      }
      Report rep = validate_model(entry.m);
      for (const auto& v : rep.violations) err.add(where, v);
      ws.models.emplace(name, std::move(entry));
    }
  }

  if (root.contains("formulas")) {
    for (const auto& [name, fj] : root["formulas"].items()) {
      FormulaPtr f = parse_formula(fj, ws, err, "formula '" + name + "'");
      if (f) ws.formulas.emplace(name, std::move(f));
    }
  }

  if (!err.errors.empty()) throw ParseError(std::move(err.errors));
  return ws;
}

std::string emit_workspace(const Workspace& ws) {
  json root;
  json qj;
  qj["kind"] = ws.qspec.kind;
  if (ws.qspec.n > 0 && ws.qspec.kind != "two") qj["n"] = ws.qspec.n;
  root["quantale"] = qj;

  if (!ws.categories.empty()) {
    json cats;
    for (const auto& [name, cat] : ws.categories) {
      json cj;
      cj["objects"] = cat->objects;
      json hom = json::array();
      for (const auto& row : cat->hom) {
        json r = json::array();
        for (const auto& v : row) r.push_back(ws.q->render(v));
        hom.push_back(r);
      }
      cj["hom"] = hom;
      cats[name] = cj;
    }
    root["categories"] = cats;
  }

  if (!ws.functors.empty()) {
    json fs;
    for (const auto& [name, entry] : ws.functors) {
      json fj;
      fj["src"] = entry.src;
      fj["dst"] = entry.dst;
      json map;
      for (size_t a = 0; a < entry.f.src->size(); ++a)
        map[entry.f.src->objects[a]] = entry.f.dst->objects[entry.f.map[a]];
      fj["map"] = map;
      fs[name] = fj;
    }
    root["functors"] = fs;
  }

  if (!ws.modules.empty()) {
    json ms;
    for (const auto& [name, entry] : ws.modules) {
      json mj;
      mj["src"] = entry.src;
      mj["dst"] = entry.dst;
      json mx = json::array();
      for (const auto& row : entry.m.matrix) {
        json r = json::array();
        for (const auto& v : row) r.push_back(ws.q->render(v));
        mx.push_back(r);
      }
      mj["matrix"] = mx;
      ms[name] = mj;
    }
    root["modules"] = ms;
  }

  if (!ws.endofunctors.empty()) {
    json es;
    for (const auto& [name, e] : ws.endofunctors) es[name] = emit_expr(*e);
    root["endofunctors"] = es;
  }

  if (!ws.squares.empty()) {
    json sq;
    for (const auto& [name, entry] : ws.squares)
      sq[name] = json{{"p0", entry.p0}, {"p1", entry.p1}, {"f", entry.f}, {"g", entry.g}};
    root["squares"] = sq;
  }

  if (!ws.coalgebras.empty()) {
    json cs;
    for (const auto& [name, entry] : ws.coalgebras) {
      json cj;
      cj["space"] = entry.space;
      cj["functor"] = entry.functor;
      json xi;
      for (size_t x = 0; x < entry.c.space->size(); ++x)
        xi[entry.c.space->objects[x]] = entry.c.xi.dst->objects[entry.c.xi.map[x]];
      cj["xi"] = xi;
      cs[name] = cj;
    }
    root["coalgebras"] = cs;
  }

  if (!ws.models.empty()) {
    json msj;
    for (const auto& [name, entry] : ws.models) {
      json mj;
      mj["coalgebra"] = entry.coalgebra;
      json val;
      for (const auto& [atom, table] : entry.m.valuation) {
        json tj;
        for (size_t x = 0; x < table.size(); ++x)
          tj[entry.m.coalg.space->objects[x]] = ws.q->render(table[x]);
        val[atom] = tj;
      }
      mj["valuation"] = val;
      msj[name] = mj;
    }
    root["models"] = msj;
  }

  if (!ws.formulas.empty()) {
    json fs;
    for (const auto& [name, f] : ws.formulas) fs[name] = emit_formula(*f);
    root["formulas"] = fs;
  }

  return root.dump(2) + "\n";
}

bool same_workspace(const Workspace& a, const Workspace& b) {
  return emit_workspace(a) == emit_workspace(b);
}

}  // namespace qcat
