#![allow(dead_code)]

use parry_abelian::ParrySubstitution;

pub fn fibonacci() -> ParrySubstitution {
    ParrySubstitution::fibonacci()
}

pub fn tribonacci() -> ParrySubstitution {
    ParrySubstitution::tribonacci()
}

/// `0 ↦ 001, 1 ↦ 01`.
pub fn non_simple() -> ParrySubstitution {
    ParrySubstitution::non_simple(1, 1, vec![2, 1])
}

pub fn test_substitutions() -> Vec<(&'static str, ParrySubstitution)> {
    vec![
        ("fibonacci", fibonacci()),
        ("tribonacci", tribonacci()),
        ("non-simple", non_simple()),
    ]
}
