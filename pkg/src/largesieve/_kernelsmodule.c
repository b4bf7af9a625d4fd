/* Hot numeric kernels: prime sieving, depth-first enumeration of squarefree
 * products of a fixed prime set, and coprime two-square representation
 * counts.  Only the buffer protocol is used, so numpy arrays pass in
 * directly and the module builds with nothing but a C compiler.
 *
 * The pure-Python fallback in _kernels_py.py implements the same contracts
 * (and the same accumulation order, so float results agree bitwise).
 */

#define PY_SSIZE_T_CLEAN
#include <Python.h>
#include <stdint.h>
#include <math.h>

/* ------------------------------------------------------------------ */

static void
sieve_fill(uint8_t *mask, Py_ssize_t limit)
{
    Py_ssize_t i, p, m;

    for (i = 0; i <= limit && i < 2; i++)
        mask[i] = 0;
    for (i = 2; i <= limit; i++)
        mask[i] = 1;
    for (p = 2; p * p <= limit; p++) {
        if (mask[p]) {
            for (m = p * p; m <= limit; m += p)
                mask[m] = 0;
        }
    }
}

static PyObject *
py_sieve_mask(PyObject *self, PyObject *args)
{
    Py_buffer buf;

    if (!PyArg_ParseTuple(args, "w*", &buf))
        return NULL;
    if (buf.len < 1) {
        PyBuffer_Release(&buf);
        PyErr_SetString(PyExc_ValueError, "mask buffer must be non-empty");
        return NULL;
    }
    sieve_fill((uint8_t *)buf.buf, buf.len - 1);
    PyBuffer_Release(&buf);
    Py_RETURN_NONE;
}

/* ------------------------------------------------------------------ */

typedef struct {
    long long count;
    long long sum_tau;
    double sum_inv;
    double sum_tau_inv;
} nu_acc;

static void
nu_rec(const int64_t *ps, Py_ssize_t n_ps, Py_ssize_t start,
       double n, long long tau, double x, double s, int s_is_one,
       nu_acc *acc)
{
    Py_ssize_t j;

    for (j = start; j < n_ps; j++) {
        double m = n * (double)ps[j];
        long long t2;
        double w;

        if (m > x)
            break;
        t2 = tau * 2;
        w = s_is_one ? 1.0 / m : pow(m, -s);
        acc->count += 1;
        acc->sum_tau += t2;
        acc->sum_inv += w;
        acc->sum_tau_inv += (double)t2 * w;
        nu_rec(ps, n_ps, j + 1, m, t2, x, s, s_is_one, acc);
    }
}

/* nu_dfs(primes: int64 buffer, x: float, s: float)
 *   -> (count, sum_tau, sum_inv, sum_tau_inv)
 *
 * Sums over all squarefree products n <= x of the given primes (n = 1
 * included): count 1, tau(n) = 2^omega(n), n^-s, tau(n) * n^-s.
 * Primes must be sorted ascending; products stay below 2^53 so the
 * double-precision products are exact.
 */
static PyObject *
py_nu_dfs(PyObject *self, PyObject *args)
{
    Py_buffer buf;
    double x, s;
    nu_acc acc = {1, 1, 1.0, 1.0};   /* the n = 1 term */
    PyObject *out;

    if (!PyArg_ParseTuple(args, "y*dd", &buf, &x, &s))
        return NULL;
    if (buf.len % (Py_ssize_t)sizeof(int64_t) != 0) {
        PyBuffer_Release(&buf);
        PyErr_SetString(PyExc_ValueError, "primes buffer must hold int64 values");
        return NULL;
    }
    nu_rec((const int64_t *)buf.buf, buf.len / (Py_ssize_t)sizeof(int64_t),
           0, 1.0, 1, x, s, s == 1.0, &acc);
    PyBuffer_Release(&buf);
    out = Py_BuildValue("(LLdd)", acc.count, acc.sum_tau,
                        acc.sum_inv, acc.sum_tau_inv);
    return out;
}

/* ------------------------------------------------------------------ */

/* r2_table(out: int64 buffer of n_max + 1 entries, n_max)
 *
 * out[n] = number of ordered pairs (x, y) in Z^2 with x^2 + y^2 = n and
 * gcd(x, y) = 1, using gcd(0, k) = |k|.  out is zeroed first.
 */
static PyObject *
py_r2_table(PyObject *self, PyObject *args)
{
    Py_buffer buf;
    long long n_max, xx, yy;
    int64_t *out;

    if (!PyArg_ParseTuple(args, "w*L", &buf, &n_max))
        return NULL;
    if (n_max < 0 || buf.len < (n_max + 1) * (Py_ssize_t)sizeof(int64_t)) {
        PyBuffer_Release(&buf);
        PyErr_SetString(PyExc_ValueError, "output buffer too small");
        return NULL;
    }
    out = (int64_t *)buf.buf;
    for (xx = 0; xx <= n_max; xx++)
        out[xx] = 0;
    for (xx = 0; xx * xx <= n_max; xx++) {
        for (yy = 0; xx * xx + yy * yy <= n_max; yy++) {
            long long a = xx, b = yy, t;

            while (b) {
                t = a % b;
                a = b;
                b = t;
            }
            if (a == 1) {
                long long mult = (xx ? 2 : 1) * (yy ? 2 : 1);
                out[xx * xx + yy * yy] += mult;
            }
        }
    }
    PyBuffer_Release(&buf);
    Py_RETURN_NONE;
}

/* ------------------------------------------------------------------ */

static PyMethodDef kernel_methods[] = {
    {"sieve_mask", py_sieve_mask, METH_VARARGS,
     "sieve_mask(mask) -> None: set mask[n] = 1 iff n is prime."},
    {"nu_dfs", py_nu_dfs, METH_VARARGS,
     "nu_dfs(primes, x, s) -> (count, sum_tau, sum_inv, sum_tau_inv)."},
    {"r2_table", py_r2_table, METH_VARARGS,
     "r2_table(out, n_max) -> None: coprime two-square representation counts."},
    {NULL, NULL, 0, NULL},
};

static struct PyModuleDef kernels_module = {
    PyModuleDef_HEAD_INIT,
    "largesieve._kernels",
    "Compiled numeric kernels for largesieve.",
    -1,
    kernel_methods,
};

PyMODINIT_FUNC
PyInit__kernels(void)
{
    return PyModule_Create(&kernels_module);
}
