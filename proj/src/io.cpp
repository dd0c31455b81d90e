#include "phgen/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace phgen {

using nlohmann::json;

namespace {

Complex parse_entry(const json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw SchemaError(where + ": entries must be numbers or [re, im] pairs");
}

Matrix parse_matrix(const json& doc, const std::string& key) {
  if (!doc.contains(key)) throw SchemaError("missing key '" + key + "'");
  const json& a = doc.at(key);
  if (!a.is_array()) throw SchemaError(key + ": expected a 2-D array");
  const std::size_t rows = a.size();
  std::size_t cols = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    if (!a[i].is_array()) throw SchemaError(key + ": expected a 2-D array");
    if (i == 0) cols = a[i].size();
    if (a[i].size() != cols) throw SchemaError(key + ": ragged rows");
  }
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          parse_entry(a[i][j], key + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
    }
  }
  return m;
}

json matrix_json(const Matrix& m, Field field) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (field == Field::Real) {
        row.push_back(m(i, j).real());
      } else {
        row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void require_shape(const Matrix& m, Eigen::Index rows, Eigen::Index cols, const char* name) {
  // A 0-row array carries no column count; accept it for any width.
  if (m.rows() == 0 && rows == 0) return;
  if (m.rows() != rows || m.cols() != cols) {
    throw SchemaError(std::string(name) + ": expected " + std::to_string(rows) + "x" + std::to_string(cols) +
                      ", got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

json minor_json(const MinorIndex& idx) { return {{"rows", idx.rows}, {"cols", idx.cols}}; }

}  // namespace

SystemFile parse_system_file(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("top level must be an object");

  SystemFile out;
  if (doc.contains("field")) {
    if (!doc["field"].is_string()) throw SchemaError("field: expected \"real\" or \"complex\"");
    try {
      out.field = field_from_string(doc["field"].get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw SchemaError(e.what());
    }
  }
  if (!doc.contains("class") || !doc["class"].is_string()) throw SchemaError("missing key 'class'");
  const std::string cls = doc["class"].get<std::string>();

  if (cls == "dae") {
    out.is_dae = true;
    out.dae.E = parse_matrix(doc, "E");
    out.dae.A = parse_matrix(doc, "A");
    out.dae.B = parse_matrix(doc, "B");
    const Eigen::Index l = out.dae.E.rows();
    require_shape(out.dae.A, l, out.dae.E.cols(), "A");
    if (out.dae.B.rows() != l) throw SchemaError("B: expected " + std::to_string(l) + " rows");
    return out;
  }

  try {
    out.system.cls = system_class_from_string(cls);
  } catch (const std::invalid_argument&) {
    throw SchemaError("class: expected H, sdH, dH or dae, got '" + cls + "'");
  }
  PHSystem& s = out.system;
  s.field = out.field;
  s.E = parse_matrix(doc, "E");
  s.J = parse_matrix(doc, "J");
  s.R = parse_matrix(doc, "R");
  s.Q = parse_matrix(doc, "Q");
  s.B = parse_matrix(doc, "B");
  const Eigen::Index l = s.E.rows();
  require_shape(s.J, l, l, "J");
  require_shape(s.R, l, l, "R");
  require_shape(s.Q, l, s.E.cols(), "Q");
  if (s.B.rows() != l) throw SchemaError("B: expected " + std::to_string(l) + " rows");
  return out;
}

SystemFile read_system_file(const std::filesystem::path& path) { return parse_system_file(read_text(path)); }

std::string system_to_json(const PHSystem& sys) {
  json doc;
  doc["field"] = std::string(to_string(sys.field));
  doc["class"] = std::string(to_string(sys.cls));
  doc["E"] = matrix_json(sys.E, sys.field);
  doc["J"] = matrix_json(sys.J, sys.field);
  doc["R"] = matrix_json(sys.R, sys.field);
  doc["Q"] = matrix_json(sys.Q, sys.field);
  doc["B"] = matrix_json(sys.B, sys.field);
  return doc.dump(2) + "\n";
}

std::string dae_to_json(const DAE& dae, Field field) {
  json doc;
  doc["field"] = std::string(to_string(field));
  doc["class"] = "dae";
  doc["E"] = matrix_json(dae.E, field);
  doc["A"] = matrix_json(dae.A, field);
  doc["B"] = matrix_json(dae.B, field);
  return doc.dump(2) + "\n";
}

std::string report_to_json(const ControlReport& report) {
  json doc;
  json verdicts = json::object();
  for (Concept c : kAllConcepts) verdicts[std::string(concept_name(c))] = std::string(to_string(report[c]));
  doc["verdicts"] = verdicts;
  doc["ranks"] = {{"rank_EB", report.rank_EB},
                  {"rank_EAB", report.rank_EAB},
                  {"rank_EAZB", report.rank_EAZB},
                  {"generic_rank", report.generic_rank}};
  json locus = json::array();
  for (const DropPoint& p : report.locus.drop_points) {
    locus.push_back(json::array({p.lambda.real(), p.lambda.imag(), p.rank}));
  }
  doc["locus"] = locus;
  json border = json::array();
  for (const Complex& z : report.locus.borderline) border.push_back(json::array({z.real(), z.imag()}));
  doc["borderline_points"] = border;
  doc["generic_ambiguous"] = report.locus.generic_ambiguous;
  doc["imaginary_axis_drop"] = report.imaginary_axis_drop;
  doc["any_borderline"] = report.any_borderline();
  if (report.certificate) {
    doc["certificate"] = {{"first", minor_json(report.certificate->first)},
                          {"second", minor_json(report.certificate->second)},
                          {"normalized_resultant", report.certificate->normalized}};
  } else {
    doc["certificate"] = nullptr;
  }
  return doc.dump(2) + "\n";
}

std::string violations_to_json(const ValidationReport& report) {
  json list = json::array();
  for (const Violation& v : report.violations) list.push_back({{"constraint", v.constraint}, {"residual", v.residual}});
  json doc = {{"valid", report.ok()}, {"violations", list}};
  return doc.dump(2) + "\n";
}

std::string result_to_csv(const ExperimentResult& result) {
  std::ostringstream os;
  os << "l,n,m,class,concept,true,false,borderline,predicted\n";
  for (const CellResult& c : result.cells) {
    os << c.dims.l << ',' << c.dims.n << ',' << c.dims.m << ',' << to_string(c.cls) << ','
       << concept_name(c.concept_) << ',' << c.true_count << ',' << c.false_count << ',' << c.borderline_count
       << ',' << to_string(c.predicted) << '\n';
  }
  return os.str();
}

std::string result_to_json(const ExperimentResult& result) {
  json cells = json::array();
  for (const CellResult& c : result.cells) {
    cells.push_back({{"l", c.dims.l},
                     {"n", c.dims.n},
                     {"m", c.dims.m},
                     {"class", std::string(to_string(c.cls))},
                     {"concept", std::string(concept_name(c.concept_))},
                     {"true", c.true_count},
                     {"false", c.false_count},
                     {"borderline", c.borderline_count},
                     {"predicted", std::string(to_string(c.predicted))}});
  }
  json doc = {{"cells", cells}, {"diagnostics", result.diagnostics}};
  return doc.dump(2) + "\n";
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace phgen
