#pragma once

// Picard lattice of the plane blown up at ten points.
//
// A class (d; m1..m10) stands for d*l - sum m_i E_i. Curve classes have
// m_i >= 0; the exceptional curve E_i itself has m_i = -1.

#include <array>
#include <string>
#include <vector>

namespace halphen {

struct DivisorClass {
  int d = 0;
  std::array<int, 10> m{};
  /// 9 for classes on the nine-point blow-up (m10 is then 0), else 10.
  int n_points = 10;

  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b);
  friend DivisorClass operator-(DivisorClass a, const DivisorClass& b);
  friend DivisorClass operator*(int k, DivisorClass a);
  friend DivisorClass operator-(DivisorClass a) { return -1 * a; }
  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;

  bool is_zero() const { return *this == DivisorClass{0, {}, n_points}; }
};

/// D . D' = d d' - sum m_i m'_i. Throws Usage when the point counts differ.
int intersect(const DivisorClass& a, const DivisorClass& b);

DivisorClass line_class();
/// E_i for 1 <= i <= 10.
DivisorClass exceptional(int i);
DivisorClass j_prime();     // (3; 1^9, 0)
DivisorClass j_class();     // (3; 1^10)
DivisorClass f_class();     // E9 - E10
DivisorClass canonical();   // (-3; -1^10)
/// du Val class (3g; g^8, g-1, 1); g odd >= 3.
DivisorClass c_class(int g);
/// s J' + F; s >= 1.
DivisorClass a_class(int s);
/// (s+1) J'; s >= 1.
DivisorClass b_class(int s);

/// Named-class lookup: "l", "E1".."E10", "J'", "J", "F", "K", "C(g)",
/// "A(s)", "B(s)". Throws Usage on an unknown name.
DivisorClass named_class(const std::string& name);

/// chi(D) = 1 + D.(D - K)/2.
int euler_char(const DivisorClass& d);
/// p_a(D) = 1 + D.(D + K)/2.
int arithmetic_genus(const DivisorClass& d);
/// K - D.
DivisorClass serre_dual(const DivisorClass& d);

std::string to_string(const DivisorClass& d);

struct IdentityCheck {
  std::string identity;
  long lhs;
  long rhs;
  bool pass;
};

/// Runs the eleven lattice identities for A(s), B(s), C(2s+1). The
/// optional `f_override` replaces F (mutation testing).
std::vector<IdentityCheck> verify_lattice_identities(int s, const DivisorClass* f_override = nullptr);

}  // namespace halphen
