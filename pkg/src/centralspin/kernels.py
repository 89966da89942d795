"""Numba kernels: gate updates for the full backend and a compensated
matvec for the symmetric backend.

The drive decomposes into a z-diagonal phase (the kick) and a product of
two-spin XX phase gates, one per satellite, that share the central spin.
With the central spin on the top bit, every XX pair couples an index below
the midpoint to one above it, so the pair loop runs over the lower half only.

The symmetric backend applies dense (n+1)-dimensional rotation matrices.  A
plain double-precision matvec chain accumulates a measurable ~1.5e-16/step
norm bias; the compensated matvec (TwoProd/TwoSum with hardware fma) keeps
repeated rotations unbiased at the ulp level, so arbitrarily long
evolutions stay unitary to the 1e-12-per-1e4-steps budget.

Kernels are single-threaded: they are memory-bound or tiny, and concurrency
belongs one layer up (sweep cells run in separate processes).
"""

from llvmlite import ir
from numba import njit, types
from numba.extending import intrinsic


@intrinsic
def _fma(typingctx, a, b, c):
    """Exact fused multiply-add; llvm lowers it to the hardware instruction."""
    sig = types.float64(types.float64, types.float64, types.float64)

    def codegen(context, builder, signature, args):
        fnty = ir.FunctionType(ir.DoubleType(), [ir.DoubleType()] * 3)
        fn = builder.module.declare_intrinsic("llvm.fma", [ir.DoubleType()], fnty)
        return builder.call(fn, args)

    return sig, codegen


@njit("void(complex128[:], complex128[:])", cache=True)
def diag_phase_inplace(amps, phases):
    """Multiply a state vector by per-basis phases, in place."""
    for g in range(amps.shape[0]):
        amps[g] *= phases[g]


@njit("void(complex128[:], float64, float64, int64, int64)", cache=True)
def xx_pair_inplace(amps, c, s, sat_bit, n_sat):
    """Apply cos*I + 1j*sin*(X_sat X_central) pair mixing in place."""
    half = 1 << n_sat
    flip = 1 << sat_bit
    for g in range(half):
        j = (g ^ flip) | half
        a = amps[g]
        b = amps[j]
        amps[g] = c * a + 1j * s * b
        amps[j] = 1j * s * a + c * b


@njit("void(float64[:,:], float64[:,:], complex128[:], complex128[:])", cache=True)
def unitary_matvec(w_re, w_im, vec, out):
    """out = W @ vec with compensated accumulation (complex dot2).

    Every product carries its exact fma residual and every addition its
    TwoSum residual, so the result is correct to ~1 ulp independent of the
    matrix dimension.
    """
    n = w_re.shape[0]
    for i in range(n):
        s_re = 0.0
        c_re = 0.0
        s_im = 0.0
        c_im = 0.0
        for j in range(n):
            vr = vec[j].real
            vi = vec[j].imag
            wr = w_re[i, j]
            wi = w_im[i, j]
            # real part: wr*vr - wi*vi
            p = wr * vr
            e = _fma(wr, vr, -p)
            t = s_re + p
            bb = t - s_re
            c_re += (s_re - (t - bb)) + (p - bb) + e
            s_re = t
            p = -wi * vi
            e = _fma(-wi, vi, -p)
            t = s_re + p
            bb = t - s_re
            c_re += (s_re - (t - bb)) + (p - bb) + e
            s_re = t
            # imaginary part: wr*vi + wi*vr
            p = wr * vi
            e = _fma(wr, vi, -p)
            t = s_im + p
            bb = t - s_im
            c_im += (s_im - (t - bb)) + (p - bb) + e
            s_im = t
            p = wi * vr
            e = _fma(wi, vr, -p)
            t = s_im + p
            bb = t - s_im
            c_im += (s_im - (t - bb)) + (p - bb) + e
            s_im = t
        out[i] = complex(s_re + c_re, s_im + c_im)
