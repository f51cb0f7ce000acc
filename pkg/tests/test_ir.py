import pytest

from modvec.irgen import (
    Add,
    Assign,
    Const,
    Decl,
    Intrinsic,
    IrTypeError,
    Shr,
    TCplx,
    TInt,
    TModInt,
    TReal,
    TUInt,
    TVect,
    UndeclaredVariable,
    Var,
    assign,
    mul,
    typecheck,
    typecheck_program,
)

a, b = Var("a", TModInt), Var("b", TModInt)


def test_annotates_binops():
    e = typecheck(Add(Var("x", TInt), Var("y", TReal)))
    assert e.type == TReal
    assert typecheck(mul(a, Const(3, TUInt))).type == TModInt
    assert typecheck(Shr(Var("x", TUInt), Const(31, TInt))).type == TUInt


def test_assign_rules():
    typecheck(assign(Var("r", TModInt), mul(a, b)))
    typecheck(assign(Var("r", TReal), Var("i", TInt)))
    with pytest.raises(IrTypeError):
        typecheck(assign(Var("r", TInt), Var("x", TReal)))
    with pytest.raises(IrTypeError):
        typecheck(assign(Var("r", TModInt), Var("z", TCplx)))


def test_mixing_undefined_fails():
    with pytest.raises(IrTypeError):
        typecheck(mul(a, Var("z", TCplx)))


def test_declarations():
    r = Var("r", TModInt)
    body = [Assign(r, mul(a, b))]
    typecheck_program(body, (a, b), (r,))
    with pytest.raises(UndeclaredVariable):
        typecheck_program(body, (a,), (r,))
    with pytest.raises(IrTypeError):
        typecheck_program([Decl(a)], (a,), ())
    with pytest.raises(IrTypeError):
        typecheck(Var("a", TInt), {"a": a})


def test_intrinsic_arity_and_immediates():
    v = Var("v", TVect(TModInt, 4))
    typecheck(Intrinsic("shuffle_epi32", (v, Const(0xD8, TUInt)), v.type))
    with pytest.raises(IrTypeError):
        typecheck(Intrinsic("shuffle_epi32", (v,), v.type))
    with pytest.raises(IrTypeError):
        typecheck(Intrinsic("shuffle_epi32", (v, v), v.type))
    with pytest.raises(IrTypeError):
        typecheck(Intrinsic("vfmadd", (v, v), v.type))


def test_cplx_does_not_narrow():
    with pytest.raises(IrTypeError):
        typecheck(assign(Var("res", TInt), mul(Var("a", TCplx), Var("b", TInt))))
    assert typecheck(mul(Var("x", TInt), Var("y", TInt))).type == TInt
