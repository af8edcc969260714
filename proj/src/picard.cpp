#include "halphen/picard.hpp"

#include <regex>
#include <sstream>

#include "halphen/errors.hpp"

namespace halphen {

DivisorClass operator+(DivisorClass a, const DivisorClass& b) {
  if (a.n_points != b.n_points) throw Usage("adding classes on different blow-ups");
  a.d += b.d;
  for (std::size_t i = 0; i < a.m.size(); ++i) a.m[i] += b.m[i];
  return a;
}

DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a + (-1 * b); }

DivisorClass operator*(int k, DivisorClass a) {
  a.d *= k;
  for (int& x : a.m) x *= k;
  return a;
}

int intersect(const DivisorClass& a, const DivisorClass& b) {
  if (a.n_points != b.n_points) {
    throw Usage("intersecting classes on blow-ups at " + std::to_string(a.n_points) + " and " +
                std::to_string(b.n_points) + " points");
  }
  int r = a.d * b.d;
  for (int i = 0; i < a.n_points; ++i) r -= a.m[i] * b.m[i];
  return r;
}

DivisorClass line_class() { return {1, {}, 10}; }

DivisorClass exceptional(int i) {
  if (i < 1 || i > 10) throw Usage("exceptional index out of range: " + std::to_string(i));
  DivisorClass e{0, {}, 10};
  e.m[i - 1] = -1;
  return e;
}

DivisorClass j_prime() { return {3, {1, 1, 1, 1, 1, 1, 1, 1, 1, 0}, 10}; }
DivisorClass j_class() { return {3, {1, 1, 1, 1, 1, 1, 1, 1, 1, 1}, 10}; }
DivisorClass f_class() { return exceptional(9) - exceptional(10); }
DivisorClass canonical() { return -1 * j_class(); }

DivisorClass c_class(int g) {
  if (g < 3 || g % 2 == 0) throw Usage("C(g) needs odd g >= 3, got " + std::to_string(g));
  DivisorClass c{3 * g, {}, 10};
  for (int i = 0; i < 8; ++i) c.m[i] = g;
  c.m[8] = g - 1;
  c.m[9] = 1;
  return c;
}

DivisorClass a_class(int s) {
  if (s < 1) throw Usage("A(s) needs s >= 1");
  return s * j_prime() + f_class();
}

DivisorClass b_class(int s) {
  if (s < 1) throw Usage("B(s) needs s >= 1");
  return (s + 1) * j_prime();
}

DivisorClass named_class(const std::string& name) {
  static const std::regex indexed(R"(^(E|C|A|B)\(?(\d+)\)?$)");
  if (name == "l") return line_class();
  if (name == "J'") return j_prime();
  if (name == "J") return j_class();
  if (name == "F") return f_class();
  if (name == "K") return canonical();
  std::smatch mt;
  if (std::regex_match(name, mt, indexed)) {
    const int k = std::stoi(mt[2]);
    switch (mt[1].str()[0]) {
      case 'E': return exceptional(k);
      case 'C': return c_class(k);
      case 'A': return a_class(k);
      default: return b_class(k);
    }
  }
  throw Usage("unknown divisor class name '" + name + "'");
}

namespace {
DivisorClass canonical_on(int n_points) {
  DivisorClass k = canonical();
  if (n_points == 9) {
    k.m[9] = 0;
    k.n_points = 9;
  }
  return k;
}
}  // namespace

int euler_char(const DivisorClass& d) {
  const DivisorClass k = canonical_on(d.n_points);
  return 1 + intersect(d, d - k) / 2;
}

int arithmetic_genus(const DivisorClass& d) {
  const DivisorClass k = canonical_on(d.n_points);
  return 1 + intersect(d, d + k) / 2;
}

DivisorClass serre_dual(const DivisorClass& d) {
  const DivisorClass k = canonical_on(d.n_points);
  return k - d;
}

std::string to_string(const DivisorClass& d) {
  std::ostringstream os;
  os << '(' << d.d << ';';
  for (int i = 0; i < d.n_points; ++i) os << (i ? "," : " ") << d.m[i];
  os << ')';
  return os.str();
}

std::vector<IdentityCheck> verify_lattice_identities(int s, const DivisorClass* f_override) {
  if (s < 1) throw Usage("lattice identities need s >= 1");
  const int g = 2 * s + 1;
  const DivisorClass jp = j_prime(), j = j_class(), k = canonical();
  const DivisorClass f = f_override ? *f_override : f_class();
  const DivisorClass a = s * jp + f;
  const DivisorClass b = b_class(s);
  const DivisorClass c = a + b;
  std::vector<IdentityCheck> out;
  auto add = [&](std::string name, long lhs, long rhs) { out.push_back({std::move(name), lhs, rhs, lhs == rhs}); };
  add("J'.J' = 0", intersect(jp, jp), 0);
  add("J.J = -1", intersect(j, j), -1);
  add("C.J = 0", intersect(c, j), 0);
  add("F.F = -2", intersect(f, f), -2);
  add("J'.F = 1", intersect(jp, f), 1);
  add("C.C = 2g-2", intersect(c, c), 2L * g - 2);
  add("C.K = 0", intersect(c, k), 0);
  add("A.A = 2s-2", intersect(a, a), 2L * s - 2);
  add("B.B = 0", intersect(b, b), 0);
  add("B.C = s+1", intersect(b, c), s + 1L);
  add("A.C = 3s-1", intersect(a, c), 3L * s - 1);
  return out;
}

}  // namespace halphen
