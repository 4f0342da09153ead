#pragma once

#include "rio/qstate.hpp"

namespace rio::gates {

/// sigma(0) = I, then the Pauli X, Y, Z.
Matrix sigma(int i);
Matrix hadamard();
/// diag(1, (-1)^z).
Matrix r(int z);
/// Control is the first (most significant) qubit.
Matrix cnot();
/// Control is the second qubit, target the first.
Matrix cnot_2_1();
Matrix identity(int qubits);

}  // namespace rio::gates
