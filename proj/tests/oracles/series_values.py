"""Reference values for the series unit tests.

Independent mpmath implementation of the recurrences, summed term by term.
Run once; the printed values are frozen into tests/test_series.cpp.
"""
import mpmath as mp

mp.mp.dps = 60


def alpha(lam, sigma, j):
    a = mp.arg(lam)
    if sigma == -1:
        ar = a / 2 - mp.pi if j == 3 else a / 2
    else:
        ar = a / 2 + mp.pi / 2 if j == 3 else a / 2 - mp.pi / 2
    return 2 * mp.sqrt(abs(lam)) * mp.expj(ar)


def exps(kappa, lam, sigma, j):
    al = alpha(lam, sigma, j)
    be = kappa / (2 * al)
    return al, be, -be**2 / (2 * al)


def frob(kappa, lam, sigma, i, E, N):
    nu = mp.mpf(-1) / 2 if i == 1 else mp.mpf(3) / 2
    c = {0: mp.mpc(1)}
    g = lambda k: c.get(k, 0)
    for n in range(1, N + 1):
        if i == 1 and n == 2:
            c[n] = 0
            continue
        c[n] = (-4 * E * g(n - 4) + kappa * g(n - 8) - 4 * sigma * lam * g(n - 10)) / (n * (n - 1 + 2 * nu))
    return nu, [c[n] for n in range(N + 1)]


def thome_a(al, be, ga, E, M):
    a = {0: mp.mpc(1)}
    h = lambda k: a.get(k, 0)
    for m in range(1, M + 1):
        a[m] = ((4 * E + 2 * be * ga) * h(m - 1) - 2 * (m - 1) * be * h(m - 2) + ga**2 * h(m - 3)
                - 2 * (m - 2) * ga * h(m - 4) + ((m - 2) * (m - 3) - mp.mpf(3) / 4) * h(m - 5)) / (2 * m * al)
    return [a[m] for m in range(M + 1)]


def v_cauchy(kappa, lam, sigma, i, j, E, N):
    # c_hat as the Cauchy product of exp(beta t^3/3 + gamma t) with the Frobenius series.
    al, be, ga = exps(kappa, lam, sigma, j)
    nu, c = frob(kappa, lam, sigma, i, E, N)
    # Taylor coefficients of the exponential factor from f' = (beta t^2 + gamma) f.
    f = [mp.mpc(1)]
    for n in range(1, N + 1):
        f.append((ga * f[n - 1] + (be * f[n - 3] if n >= 3 else 0)) / n)
    return [sum(f[k] * c[n - k] for k in range(n + 1)) for n in range(N + 1)]


def eta_brute(kappa, lam, sigma, i, j, E, n, M):
    al, be, ga = exps(kappa, lam, sigma, j)
    nu = mp.mpf(-1) / 2 if i == 1 else mp.mpf(3) / 2
    ch = v_cauchy(kappa, lam, sigma, i, j, E, n + M + 2)
    a = thome_a(al, be, ga, E, M)
    g = lambda k: ch[k] if k >= 0 else 0
    return mp.fsum(a[m] * (al * g(n + m - 4) + 2 * be * g(n + m - 2) + 2 * ga * g(n + m)
                           - (n + 2 * m + 3 + nu) * g(n + m + 1)) for m in range(M + 1))


def show(label, z):
    z = mp.mpc(z)
    print(f"{label}: {mp.nstr(z.real, 40)} {mp.nstr(z.imag, 40)}")


if __name__ == "__main__":
    E = mp.mpc(1)
    # eta at a small index, kappa=1, lambda=1, sigma=+1, i=1, j=3.
    for n in (3, 7):
        show(f"eta n={n}", eta_brute(1, mp.mpc(1), 1, 1, 3, E, n, 1400))
    # Frobenius value and derivative at t = 0.5.
    nu, c = frob(1, mp.mpc(1), 1, 1, E, 200)
    f = lambda t: t**nu * mp.fsum(c[n] * t**n for n in range(201))
    show("frob t=0.5", f(mp.mpf("0.5")))
    show("frob' t=0.5", mp.diff(f, mp.mpf("0.5")))
    # Thome j=4, sigma=+1, kappa=0, lambda=i, E=1 at t=3.
    al, be, ga = exps(0, mp.mpc(0, 1), 1, 4)
    a = thome_a(al, be, ga, E, 400)
    t = mp.mpf(3)
    terms = [a[m] * t**-m for m in range(401)]
    mags = [abs(x) for x in terms]
    kmin = min(range(len(mags)), key=lambda k: mags[k])
    s = mp.fsum(terms[: kmin + 1])
    show("thome t=3", mp.exp(al * t**5 / 5) * t**-2 * s)
    print("thome smallest term", mp.nstr(mags[kmin], 5), "at", kmin)
    show("a2 kappa=0 lambda=i s=+1 j=4", a[2])
