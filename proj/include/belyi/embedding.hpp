#pragma once

#include <optional>
#include <vector>

#include "belyi/polynomial.hpp"

namespace belyi {

// Ring homomorphism F_{p^a} -> F_{p^b} fixing F_p, fixed by the image of
// the source generator.
class Embedding {
 public:
  Embedding(FieldPtr source, FieldPtr target, Elem image_of_generator);
  static Embedding identity(const FieldPtr& field);

  const FieldPtr& source() const { return source_; }
  const FieldPtr& target() const { return target_; }
  const Elem& image_of_generator() const { return image_; }

  Elem map(const Elem& a) const;
  Polynomial map(const Polynomial& f) const;
  // Source element mapping to b, if b lies in the image.
  std::optional<Elem> preimage(const Elem& b) const;
  // Coefficient-wise preimage; nullopt if any coefficient is outside.
  std::optional<Polynomial> preimage(const Polynomial& f) const;
  // this: B -> C, inner: A -> B; result A -> C.
  Embedding after(const Embedding& inner) const;

 private:
  void build_inverse();

  FieldPtr source_;
  FieldPtr target_;
  Elem image_;
  std::vector<Elem> basis_images_;  // image of z^j, j < deg(source)
  // Linear left-inverse on pivot rows: source coords = inv * target[pivots]
  std::vector<int> pivots_;
  std::vector<std::vector<Coeff>> inverse_;
};

// Embedding determined by the lexicographically smallest root of the
// source modulus inside target. Requires deg(source) | deg(target) and a
// common characteristic.
Embedding embed(const FieldPtr& source, const FieldPtr& target);

// Canonical F_{q^k} together with an inclusion of base.
struct Extension {
  FieldPtr field;
  Embedding inclusion;
};
Extension extension_of_degree(const FieldPtr& base, int k);

// A field holding a root of the irreducible polynomial g over base,
// together with that root. For prime base fields this is F_p[x]/(g) and
// the root is the class of x; otherwise a canonical extension is built and
// the smallest root is chosen.
struct RootField {
  Extension ext;
  Elem root;
};
RootField root_field(const Polynomial& g, Rng& rng);

// Minimal polynomial over inclusion.source() of an element of
// inclusion.target().
Polynomial minimal_polynomial(const Embedding& inclusion, const Elem& a);

// Degree over `base` of the smallest subfield of inclusion.target()
// containing a, i.e. the size of its orbit under |base|-Frobenius.
int degree_over(const Embedding& inclusion, const Elem& a);

}  // namespace belyi
