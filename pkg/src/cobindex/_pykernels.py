"""Pure-Python reference kernels (always exact, no overflow regime)."""


def trunc_mul(a, b, I, J, K, W, size):
    out = [0] * size
    for i, j, k, w in zip(I, J, K, W):
        x = a[i]
        if x:
            y = b[j]
            if y:
                out[k] += w * x * y
    return out
