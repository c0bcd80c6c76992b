//! Operand compatibility and result types of binary operations.

use crate::syntax::{firstorder, Op, Type};

/// Strip top-level refinements.
pub fn base(ty: &Type) -> &Type {
    match ty {
        Type::Refine(b, _) => base(b),
        other => other,
    }
}

fn is_boolean(ty: &Type) -> bool {
    match base(ty) {
        Type::True | Type::False => true,
        Type::Union(a, b) => is_boolean(a) && is_boolean(b),
        _ => false,
    }
}

/// Result type of `op` on two operands of type `operand`, or `None` when
/// the operation is not defined there.
pub fn compat_result(op: Op, operand: &Type) -> Option<Type> {
    let b = base(operand);
    if op.is_arithmetic() {
        (*b == Type::Int32).then_some(Type::Int32)
    } else if op.is_comparison() {
        (*b == Type::Int32).then(Type::bool)
    } else if op.is_logical() {
        is_boolean(b).then(Type::bool)
    } else {
        // Equality also accepts booleans: the run-time test is defined on
        // every first-order value.
        (firstorder(b) || is_boolean(b)).then(Type::bool)
    }
}
