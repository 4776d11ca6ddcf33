#include "qsets/json_io.hpp"

#include <fstream>
#include <set>

#include "qsets/error.hpp"

namespace qsets {

namespace {

std::string at_key(const std::string& path, const std::string& key) {
  return path + "." + key;
}

std::string at_index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(at_key(path, key), "missing field");
  return *it;
}

const Json& array_field(const Json& j, const std::string& key, const std::string& path) {
  const Json& a = field(j, key, path);
  if (!a.is_array()) throw SchemaError(at_key(path, key), "expected an array");
  return a;
}

const Json& object_field(const Json& j, const std::string& key, const std::string& path) {
  const Json& o = field(j, key, path);
  if (!o.is_object()) throw SchemaError(at_key(path, key), "expected an object");
  return o;
}

Index count_of(const Json& j, const std::string& path, Index min = 0) {
  if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
  const auto v = j.get<long long>();
  if (v < min) throw SchemaError(path, "must be at least " + std::to_string(min));
  return static_cast<Index>(v);
}

std::string string_of(const Json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path, "expected a string");
  return j.get<std::string>();
}

bool bool_of(const Json& j, const std::string& path) {
  if (!j.is_boolean()) throw SchemaError(path, "expected a boolean");
  return j.get<bool>();
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw SchemaError(path, "expected [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

// Rethrows a PreconditionError raised while assembling decoded data.
template <class F>
auto as_schema(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const PreconditionError& e) {
    throw SchemaError(path, e.what());
  }
}

}  // namespace

Json to_json(const CMatrix& m) {
  Json data = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) data.push_back(complex_to_json(m(r, c)));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

CMatrix matrix_from_json(const Json& j, const std::string& path) {
  const Index rows = count_of(field(j, "rows", path), at_key(path, "rows"));
  const Index cols = count_of(field(j, "cols", path), at_key(path, "cols"));
  const Json& data = array_field(j, "data", path);
  const std::string dpath = at_key(path, "data");
  if (Index(data.size()) != rows * cols) {
    throw SchemaError(dpath, "expected rows*cols = " + std::to_string(rows * cols) +
                                 " entries, got " + std::to_string(data.size()));
  }
  CMatrix m(rows, cols);
  for (Index k = 0; k < rows * cols; ++k) {
    m(k / cols, k % cols) = complex_from_json(data[k], at_index(dpath, std::size_t(k)));
  }
  return m;
}

Json vector_to_json(const CVector& v) {
  Json out = Json::array();
  for (Index k = 0; k < v.size(); ++k) out.push_back(complex_to_json(v(k)));
  return out;
}

CVector vector_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of [re, im]");
  CVector v(Index(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    v(Index(k)) = complex_from_json(j[k], at_index(path, k));
  }
  return v;
}

Json to_json(const OperatorSubspace& s) {
  Json basis = Json::array();
  for (const auto& m : s.basis()) basis.push_back(to_json(m));
  return {{"dom", s.domain_dim()}, {"cod", s.codomain_dim()}, {"basis", basis}};
}

OperatorSubspace subspace_from_json(const Json& j, const std::string& path) {
  const Index dom = count_of(field(j, "dom", path), at_key(path, "dom"), 1);
  const Index cod = count_of(field(j, "cod", path), at_key(path, "cod"), 1);
  const Json& basis = array_field(j, "basis", path);
  std::vector<CMatrix> mats;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const std::string p = at_index(at_key(path, "basis"), k);
    CMatrix m = matrix_from_json(basis[k], p);
    if (m.rows() != cod || m.cols() != dom) {
      throw SchemaError(p, "expected a cod x dom matrix");
    }
    mats.push_back(std::move(m));
  }
  return span(dom, cod, mats);
}

Json to_json(const QuantumSet& x) {
  Json atoms = Json::array();
  for (const auto& a : x.atoms()) {
    atoms.push_back({{"label", a.label}, {"dim", a.dim}, {"dual", a.dual}});
  }
  return {{"atoms", atoms}};
}

QuantumSet qset_from_json(const Json& j, const std::string& path) {
  const Json& atoms = array_field(j, "atoms", path);
  std::vector<Atom> out;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const std::string p = at_index(at_key(path, "atoms"), k);
    Atom a;
    a.label = string_of(field(atoms[k], "label", p), at_key(p, "label"));
    a.dim = count_of(field(atoms[k], "dim", p), at_key(p, "dim"), 1);
    if (atoms[k].contains("dual")) a.dual = bool_of(atoms[k]["dual"], at_key(p, "dual"));
    out.push_back(std::move(a));
  }
  return as_schema(at_key(path, "atoms"), [&] { return QuantumSet(std::move(out)); });
}

Json to_json(const Relation& r) {
  Json blocks = Json::array();
  for (const auto& [key, space] : r.blocks()) {
    blocks.push_back({{"from", key.first}, {"to", key.second}, {"space", to_json(space)}});
  }
  return {{"source", to_json(r.source())}, {"target", to_json(r.target())}, {"blocks", blocks}};
}

Relation relation_from_json(const Json& j, const std::string& path) {
  Relation r(qset_from_json(field(j, "source", path), at_key(path, "source")),
             qset_from_json(field(j, "target", path), at_key(path, "target")));
  const Json& blocks = array_field(j, "blocks", path);
  std::set<BlockKey> seen;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const std::string p = at_index(at_key(path, "blocks"), k);
    const std::string from = string_of(field(blocks[k], "from", p), at_key(p, "from"));
    const std::string to = string_of(field(blocks[k], "to", p), at_key(p, "to"));
    if (!seen.insert({from, to}).second) throw SchemaError(p, "duplicate block");
    auto space = subspace_from_json(field(blocks[k], "space", p), at_key(p, "space"));
    as_schema(p, [&] {
      r.set_block(from, to, std::move(space));
      return 0;
    });
  }
  return r;
}

Json to_json(const BlockOperator& b) {
  Json blocks = Json::object();
  for (const auto& [label, m] : b.blocks()) blocks[label] = to_json(m);
  return {{"carrier", to_json(b.carrier())}, {"blocks", blocks}};
}

BlockOperator block_operator_from_json(const Json& j, const std::string& path) {
  BlockOperator b(qset_from_json(field(j, "carrier", path), at_key(path, "carrier")));
  const Json& blocks = object_field(j, "blocks", path);
  for (const auto& [label, m] : blocks.items()) {
    const std::string p = at_key(at_key(path, "blocks"), label);
    CMatrix mat = matrix_from_json(m, p);
    as_schema(p, [&] {
      b.set_block(label, std::move(mat));
      return 0;
    });
  }
  return b;
}

Json to_json(const Homomorphism& h) {
  Json images = Json::array();
  for (const auto& [key, img] : h.images) {
    const auto& [label, i, j] = key;
    images.push_back({{"label", label}, {"i", i}, {"j", j}, {"image", to_json(img)}});
  }
  return {{"domain", to_json(h.domain)}, {"codomain", to_json(h.codomain)}, {"images", images}};
}

Homomorphism homomorphism_from_json(const Json& j, const std::string& path) {
  Homomorphism h;
  h.domain = qset_from_json(field(j, "domain", path), at_key(path, "domain"));
  h.codomain = qset_from_json(field(j, "codomain", path), at_key(path, "codomain"));
  const Json& images = array_field(j, "images", path);
  for (std::size_t k = 0; k < images.size(); ++k) {
    const std::string p = at_index(at_key(path, "images"), k);
    const std::string label = string_of(field(images[k], "label", p), at_key(p, "label"));
    const Index i = count_of(field(images[k], "i", p), at_key(p, "i"));
    const Index jj = count_of(field(images[k], "j", p), at_key(p, "j"));
    const Atom* a = h.domain.find(label);
    if (!a) throw SchemaError(at_key(p, "label"), "unknown atom " + label);
    if (i >= a->dim || jj >= a->dim) throw SchemaError(p, "matrix unit out of range");
    BlockOperator img =
        block_operator_from_json(field(images[k], "image", p), at_key(p, "image"));
    if (img.carrier() != h.codomain) {
      throw SchemaError(at_key(p, "image"), "image is not on the codomain");
    }
    if (!h.images.emplace(std::make_tuple(label, i, jj), std::move(img)).second) {
      throw SchemaError(p, "duplicate generator");
    }
  }
  return h;
}

Json to_json(const Fission& f) {
  Json entries = Json::array();
  for (const auto& [key, e] : f.entries) {
    entries.push_back(
        {{"from", key.first}, {"to", key.second}, {"h", e.h}, {"map", to_json(e.map)}});
  }
  return {{"source", to_json(f.source)}, {"target", to_json(f.target)}, {"entries", entries}};
}

Fission fission_from_json(const Json& j, const std::string& path) {
  Fission f;
  f.source = qset_from_json(field(j, "source", path), at_key(path, "source"));
  f.target = qset_from_json(field(j, "target", path), at_key(path, "target"));
  const Json& entries = array_field(j, "entries", path);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const std::string p = at_index(at_key(path, "entries"), k);
    const std::string from = string_of(field(entries[k], "from", p), at_key(p, "from"));
    const std::string to = string_of(field(entries[k], "to", p), at_key(p, "to"));
    const Atom* x = f.source.find(from);
    const Atom* y = f.target.find(to);
    if (!x) throw SchemaError(at_key(p, "from"), "unknown atom " + from);
    if (!y) throw SchemaError(at_key(p, "to"), "unknown atom " + to);
    FissionEntry e;
    e.h = count_of(field(entries[k], "h", p), at_key(p, "h"), 1);
    e.map = matrix_from_json(field(entries[k], "map", p), at_key(p, "map"));
    if (e.map.rows() != y->dim * e.h || e.map.cols() != x->dim) {
      throw SchemaError(at_key(p, "map"), "expected a (dim Y * h) x dim X matrix");
    }
    if (!f.entries.emplace(BlockKey{from, to}, std::move(e)).second) {
      throw SchemaError(p, "duplicate entry");
    }
  }
  return f;
}

Json to_json(const Predicate& p) {
  Json spaces = Json::object();
  for (const auto& a : p.carrier().atoms()) {
    Json cols = Json::array();
    const CMatrix& q = p.space(a.label);
    for (Index k = 0; k < q.cols(); ++k) cols.push_back(vector_to_json(q.col(k)));
    spaces[a.label] = cols;
  }
  return {{"carrier", to_json(p.carrier())}, {"spaces", spaces}};
}

Predicate predicate_from_json(const Json& j, const std::string& path) {
  Predicate p(qset_from_json(field(j, "carrier", path), at_key(path, "carrier")));
  const Json& spaces = object_field(j, "spaces", path);
  for (const auto& [label, cols] : spaces.items()) {
    const std::string sp = at_key(at_key(path, "spaces"), label);
    const Atom* a = p.carrier().find(label);
    if (!a) throw SchemaError(sp, "unknown atom");
    if (!cols.is_array()) throw SchemaError(sp, "expected a list of column vectors");
    CMatrix gens(a->dim, Index(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const std::string cp = at_index(sp, k);
      const CVector v = vector_from_json(cols[k], cp);
      if (v.size() != a->dim) throw SchemaError(cp, "vector length differs from atom dim");
      gens.col(Index(k)) = v;
    }
    p.set_space(label, gens);
  }
  return p;
}

Json to_json(const FunctionWitness& w) {
  return {{"function", w.is_function()},
          {"partial_function", w.is_partial_function()},
          {"coinjective", w.is_coinjective},
          {"cosurjective", w.is_cosurjective},
          {"injective", w.is_injective},
          {"surjective", w.is_surjective},
          {"residuals",
           {{"coinjective", w.coinjective_residual},
            {"cosurjective", w.cosurjective_residual},
            {"injective", w.injective_residual},
            {"surjective", w.surjective_residual}}}};
}

Json to_json(const SpectralResult& s) {
  Json values = Json::array();
  for (std::size_t k = 0; k < s.values.size(); ++k) {
    values.push_back({{"label", s.labels[k]}, {"value", s.values[k]}});
  }
  return {{"values", values}, {"function", to_json(s.function)}};
}

Json to_json(const Graph& g) {
  Json edges = Json::array();
  for (const auto& [a, b] : g.edges) edges.push_back(Json::array({a, b}));
  return {{"vertices", g.vertices}, {"edges", edges}};
}

Graph graph_from_json(const Json& j, const std::string& path) {
  Graph g;
  const Json& vs = array_field(j, "vertices", path);
  for (std::size_t k = 0; k < vs.size(); ++k) {
    g.vertices.push_back(string_of(vs[k], at_index(at_key(path, "vertices"), k)));
  }
  const Json& es = array_field(j, "edges", path);
  for (std::size_t k = 0; k < es.size(); ++k) {
    const std::string p = at_index(at_key(path, "edges"), k);
    if (!es[k].is_array() || es[k].size() != 2) throw SchemaError(p, "expected [a, b]");
    g.edges.emplace_back(string_of(es[k][0], at_index(p, 0)), string_of(es[k][1], at_index(p, 1)));
  }
  as_schema(path, [&] {
    g.validate();
    return 0;
  });
  return g;
}

Json to_json(const ColoringFamily& f) {
  Json projections = Json::object();
  for (const auto& [key, p] : f.projections) {
    projections[key.first + "|" + key.second] = to_json(p);
  }
  return {{"dim", f.dim}, {"colors", f.colors}, {"projections", projections}};
}

ColoringFamily family_from_json(const Json& j, const std::string& path) {
  ColoringFamily f;
  f.dim = count_of(field(j, "dim", path), at_key(path, "dim"), 1);
  const Json& colors = array_field(j, "colors", path);
  for (std::size_t k = 0; k < colors.size(); ++k) {
    f.colors.push_back(string_of(colors[k], at_index(at_key(path, "colors"), k)));
  }
  const Json& projections = object_field(j, "projections", path);
  for (const auto& [key, m] : projections.items()) {
    const std::string p = at_key(at_key(path, "projections"), key);
    const auto bar = key.rfind('|');
    if (bar == std::string::npos) throw SchemaError(p, "key must be \"vertex|color\"");
    CMatrix mat = matrix_from_json(m, p);
    if (mat.rows() != f.dim || mat.cols() != f.dim) throw SchemaError(p, "expected dim x dim");
    f.projections[{key.substr(0, bar), key.substr(bar + 1)}] = std::move(mat);
  }
  return f;
}

Json to_json(const ColoringReport& r) {
  return {{"pass", r.pass && r.predicate_pass},
          {"violation", r.violation},
          {"predicate_pass", r.predicate_pass},
          {"predicate_violation", r.predicate_violation}};
}

Json read_json_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw SchemaError(file, "cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError(file, e.what());
  }
}

}  // namespace qsets
