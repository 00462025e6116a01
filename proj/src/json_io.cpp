#include "screenlab/json_io.hpp"

namespace screenlab::json_io {

Rational rational_from_json(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw PreconditionError("json: expected a rational as string or integer");
}

BraidingMatrix braiding_from_json(const json& j) {
  const int rank = j.at("rank").get<int>();
  const auto& m = j.at("m");
  if (static_cast<int>(m.size()) != rank)
    throw PreconditionError("json braiding: row count != rank");
  std::vector<std::vector<Rational>> rows;
  for (const auto& row : m) {
    if (static_cast<int>(row.size()) != rank)
      throw PreconditionError("json braiding: column count != rank");
    std::vector<Rational> r;
    for (const auto& e : row) r.push_back(rational_from_json(e));
    rows.push_back(std::move(r));
  }
  return BraidingMatrix(rows);
}

json braiding_to_json(const BraidingMatrix& q) {
  json m = json::array();
  for (int i = 0; i < q.rank(); ++i) {
    json row = json::array();
    for (int j2 = 0; j2 < q.rank(); ++j2) row.push_back(q.exponent(i, j2).str());
    m.push_back(row);
  }
  return json{{"rank", q.rank()}, {"m", m}};
}

voa::Lattice lattice_from_json(const json& j) {
  const int rank = j.at("rank").get<int>();
  const auto& g = j.at("gram");
  if (static_cast<int>(g.size()) != rank)
    throw PreconditionError("json lattice: row count != rank");
  std::vector<std::vector<Rational>> rows;
  for (const auto& row : g) {
    if (static_cast<int>(row.size()) != rank)
      throw PreconditionError("json lattice: column count != rank");
    std::vector<Rational> r;
    for (const auto& e : row) r.push_back(rational_from_json(e));
    rows.push_back(std::move(r));
  }
  return voa::Lattice(rows);
}

json lattice_to_json(const voa::Lattice& lattice) {
  json g = json::array();
  for (int i = 0; i < lattice.rank(); ++i) {
    json row = json::array();
    for (int j2 = 0; j2 < lattice.rank(); ++j2) row.push_back(lattice.gram(i, j2).str());
    g.push_back(row);
  }
  return json{{"rank", lattice.rank()}, {"gram", g}};
}

json element_to_json(const voa::VoaElement<Complex>& v) {
  json terms = json::array();
  for (const auto& [key, coeff] : v.terms()) {
    json mono = json::array();
    for (const auto& e : key.first.entries())
      mono.push_back(json::array({e.dir, e.order, e.mult}));
    json point = json::array();
    for (const auto& c : key.second) {
      if (c.is_integer() && c.num().fits_slong_p())
        point.push_back(c.num().get_si());
      else
        point.push_back(c.str());
    }
    terms.push_back(json{{"monomial", mono},
                         {"lattice", point},
                         {"coeff", {{"re", coeff.real()}, {"im", coeff.imag()}}}});
  }
  return terms;
}

voa::VoaElement<Complex> element_from_json(const json& j, int rank, int truncation) {
  voa::VoaElement<Complex> v(rank, truncation);
  for (const auto& term : j) {
    voa::DiffMonomial mono;
    for (const auto& e : term.at("monomial"))
      mono = mono.with_multiplicity_delta(e.at(0).get<int>(), e.at(1).get<int>(),
                                          e.at(2).get<int>());
    voa::LatticePoint point;
    for (const auto& c : term.at("lattice")) point.push_back(rational_from_json(c));
    const auto& coeff = term.at("coeff");
    v.add(mono, point, Complex(coeff.at("re").get<double>(), coeff.at("im").get<double>()));
  }
  return v;
}

}  // namespace screenlab::json_io
