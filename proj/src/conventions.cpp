#include "qgeom/conventions.hpp"

#include "qgeom/errors.hpp"

namespace qgeom {

ConventionSet::ConventionSet(double hbar)
    : hbar_(hbar),
      description_(
          "lie=[A,B]_-=-i(AB-BA); jordan=(AB+BA)/2; pairing=Tr(xi A)/2; "
          "star=Tr(xi A B)/2; associator_constant=1; dual_flow=+[H,xi]_-/hbar; "
          "heisenberg=-[H,A]_-/hbar; hamiltonian_field=-J grad f; kappa=4") {
  if (!(hbar > 0.0)) throw DomainError("ConventionSet: hbar must be positive");
}

}  // namespace qgeom
