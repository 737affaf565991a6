"""Braid toolkit data models."""

from src.braids.models.schemas import (
    BraidsBaseModel,
    BraidWord,
    CertifiedElement,
    CommutatorExpr,
    Diagram,
    Ds3Form,
    DsInsertion,
    DsRewrite,
    EquivalenceWitness,
    ExprCommutator,
    ExprConjugate,
    ExprInverse,
    ExprLeaf,
    ExprProduct,
    FormalKnotSum,
    FreeWord,
    IdealFactorization,
    IdentityReport,
    KnotHandle,
    LinkProfile,
    MarkovKind,
    MarkovStep,
    NormalForm,
    Permutation,
    Relator,
    Series,
    SignedRelator,
    SignedSingularWord,
    SingularBraidWord,
    StabilizationData,
)

__all__ = [
    "BraidsBaseModel",
    "BraidWord",
    "CertifiedElement",
    "CommutatorExpr",
    "Diagram",
    "Ds3Form",
    "DsInsertion",
    "DsRewrite",
    "EquivalenceWitness",
    "ExprCommutator",
    "ExprConjugate",
    "ExprInverse",
    "ExprLeaf",
    "ExprProduct",
    "FormalKnotSum",
    "FreeWord",
    "IdealFactorization",
    "IdentityReport",
    "KnotHandle",
    "LinkProfile",
    "MarkovKind",
    "MarkovStep",
    "NormalForm",
    "Permutation",
    "Relator",
    "Series",
    "SignedRelator",
    "SignedSingularWord",
    "SingularBraidWord",
    "StabilizationData",
]
