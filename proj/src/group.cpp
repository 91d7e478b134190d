#include "hyperblock/group.hpp"

#include "hyperblock/error.hpp"

#include <algorithm>

namespace hyperblock {

Psl2::Psl2(ResidueField field, CuspMode mode) : field_(std::move(field)), mode_(mode) {
  units_.push_back(field_.one());
  units_.push_back(field_.neg(field_.one()));
  if (mode_ == CuspMode::Dim3) {
    if (!field_.has_i())
      throw Error(ErrorCode::ModeMismatch, "3D cusps need a Gaussian residue field");
    const FieldElement s = field_.sqrt_minus_one();
    units_.push_back(s);
    units_.push_back(field_.neg(s));
  }
}

ProjMatrix Psl2::canonical(const ProjMatrix &m) const {
  const ProjMatrix neg{field_.neg(m.a), field_.neg(m.b), field_.neg(m.c), field_.neg(m.d)};
  return std::min(m, neg);
}

ProjMatrix Psl2::make(FieldElement a, FieldElement b, FieldElement c, FieldElement d) const {
  const FieldElement det = field_.sub(field_.mul(a, d), field_.mul(b, c));
  if (det != field_.one())
    throw Error(ErrorCode::InvalidMatrix, "determinant is not 1");
  return canonical(ProjMatrix{a, b, c, d});
}

ProjMatrix Psl2::reduce(GaussianInt a, GaussianInt b, GaussianInt c, GaussianInt d) const {
  return make(field_.reduce(a), field_.reduce(b), field_.reduce(c), field_.reduce(d));
}

ProjMatrix Psl2::identity() const {
  return canonical(ProjMatrix{field_.one(), field_.zero(), field_.zero(), field_.one()});
}

ProjMatrix Psl2::compose(const ProjMatrix &g, const ProjMatrix &h) const {
  const auto &f = field_;
  return canonical(ProjMatrix{
      f.add(f.mul(g.a, h.a), f.mul(g.b, h.c)),
      f.add(f.mul(g.a, h.b), f.mul(g.b, h.d)),
      f.add(f.mul(g.c, h.a), f.mul(g.d, h.c)),
      f.add(f.mul(g.c, h.b), f.mul(g.d, h.d)),
  });
}

ProjMatrix Psl2::invert(const ProjMatrix &g) const {
  return canonical(ProjMatrix{g.d, field_.neg(g.b), field_.neg(g.c), g.a});
}

Cusp Psl2::cusp(FieldElement u, FieldElement w) const {
  if (ResidueField::is_zero(u) && ResidueField::is_zero(w))
    throw Error(ErrorCode::ZeroVector, "cusp of the zero vector");
  Cusp best{u, w, mode_};
  for (const FieldElement unit : units_) {
    const Cusp candidate{field_.mul(unit, u), field_.mul(unit, w), mode_};
    best = std::min(best, candidate);
  }
  return best;
}

Cusp Psl2::cusp_from_rational(GaussianInt num, GaussianInt den) const {
  const GaussianInt g = gauss_gcd(num, den);
  const FieldElement u = field_.reduce(exact_div(num, g));
  const FieldElement w = field_.reduce(exact_div(den, g));
  if (ResidueField::is_zero(u) && ResidueField::is_zero(w))
    throw Error(ErrorCode::ZeroVector, to_string(num) + "/" + to_string(den) + " lies over the ideal");
  return cusp(u, w);
}

Cusp Psl2::act(const ProjMatrix &g, const Cusp &x) const {
  if (x.mode != mode_)
    throw Error(ErrorCode::ModeMismatch, "cusp and group use different unit groups");
  const auto &f = field_;
  return cusp(f.add(f.mul(g.a, x.u), f.mul(g.b, x.w)), f.add(f.mul(g.c, x.u), f.mul(g.d, x.w)));
}

std::size_t Psl2::cusp_count() const noexcept {
  const auto q = static_cast<std::size_t>(field_.order());
  return (q * q - 1) / units_.size();
}

std::vector<Cusp> Psl2::all_cusps() const {
  const auto elems = field_.elements();
  std::vector<Cusp> out;
  for (const FieldElement u : elems)
    for (const FieldElement w : elems) {
      if (ResidueField::is_zero(u) && ResidueField::is_zero(w))
        continue;
      const Cusp c = cusp(u, w);
      if (c.u == u && c.w == w)
        out.push_back(c);
    }
  // generation order is already lexicographic
  return out;
}

std::uint64_t Psl2::key(const ProjMatrix &m) const noexcept {
  const auto idx = [this](FieldElement e) { return static_cast<std::uint64_t>(field_.index(e)); };
  return idx(m.a) << 48 | idx(m.b) << 32 | idx(m.c) << 16 | idx(m.d);
}

CuspIndex::CuspIndex(const Psl2 &group) : field_(group.field()), cusps_(group.all_cusps()) {
  const auto q = static_cast<std::size_t>(field_.order());
  lookup_.assign(q * q, UINT32_MAX);
  for (std::uint32_t i = 0; i < cusps_.size(); ++i)
    lookup_[static_cast<std::size_t>(field_.index(cusps_[i].u)) * q +
            static_cast<std::size_t>(field_.index(cusps_[i].w))] = i;
}

std::uint32_t CuspIndex::id(const Cusp &x) const {
  const auto q = static_cast<std::size_t>(field_.order());
  const std::uint32_t i = lookup_[static_cast<std::size_t>(field_.index(x.u)) * q +
                                  static_cast<std::size_t>(field_.index(x.w))];
  if (i == UINT32_MAX)
    throw Error(ErrorCode::ModeMismatch, "vector is not a canonical cusp");
  return i;
}

GroupTable::GroupTable(Psl2 group, std::vector<ProjMatrix> elements)
    : group_(std::move(group)), elements_(std::move(elements)) {
  index_.reserve(elements_.size());
  for (std::uint32_t i = 0; i < elements_.size(); ++i)
    index_.emplace(group_.key(elements_[i]), i);
}

std::optional<std::size_t> GroupTable::index_of(const ProjMatrix &m) const {
  const auto it = index_.find(group_.key(group_.canonical(m)));
  if (it == index_.end())
    return std::nullopt;
  return it->second;
}

GroupTable enumerate_group(const Psl2 &group, std::size_t cap) {
  const ResidueField &f = group.field();
  const auto q = static_cast<std::size_t>(f.order());
  const std::size_t expected = q * (q * q - 1) / 2;
  if (expected > cap)
    throw Error(ErrorCode::CapExceeded, "|PSL2(" + std::to_string(q) + ")| = " +
                                            std::to_string(expected) + " exceeds cap " +
                                            std::to_string(cap));
  const auto elems = f.elements();
  std::vector<ProjMatrix> out;
  out.reserve(2 * expected);
  for (const FieldElement c : elems) {
    if (ResidueField::is_zero(c)) {
      for (const FieldElement a : elems) {
        if (ResidueField::is_zero(a))
          continue;
        const FieldElement d = f.inv(a);
        for (const FieldElement b : elems)
          out.push_back(group.canonical(ProjMatrix{a, b, c, d}));
      }
    } else {
      const FieldElement c_inv = f.inv(c);
      for (const FieldElement a : elems)
        for (const FieldElement d : elems) {
          const FieldElement b = f.mul(f.sub(f.mul(a, d), f.one()), c_inv);
          out.push_back(group.canonical(ProjMatrix{a, b, c, d}));
        }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.size() != expected)
    throw Error(ErrorCode::CountMismatch, "enumerated " + std::to_string(out.size()) +
                                              " elements, expected " + std::to_string(expected));
  return GroupTable(group, std::move(out));
}

std::vector<ProjMatrix> cusp_stabilizer(const GroupTable &table, const Cusp &x) {
  const Psl2 &g = table.group();
  std::vector<ProjMatrix> out;
  for (const ProjMatrix &m : table.elements())
    if (g.act(m, x) == x)
      out.push_back(m);
  return out;
}

std::vector<ProjMatrix> transversal_to(const GroupTable &table, const CuspIndex &cusps,
                                       std::uint32_t base) {
  const Psl2 &g = table.group();
  std::vector<ProjMatrix> out(cusps.size());
  std::vector<bool> seen(cusps.size(), false);
  std::size_t found = 0;
  for (const ProjMatrix &m : table.elements()) {
    const std::uint32_t y = cusps.id(g.act(m, cusps[base]));
    if (!seen[y]) {
      seen[y] = true;
      out[y] = g.invert(m);
      if (++found == cusps.size())
        break;
    }
  }
  if (found != cusps.size())
    throw Error(ErrorCode::CountMismatch, "group action on cusps is not transitive");
  return out;
}

} // namespace hyperblock
