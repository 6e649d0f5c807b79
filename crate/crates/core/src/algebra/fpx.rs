//! Dense univariate polynomials over a prime field `F_p`, coefficients
//! stored low degree first. Only what the field constructor needs.

pub(crate) type Fpx = Vec<u32>;

pub(crate) fn trim(a: &mut Fpx) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime, so a^(p-2) is the inverse
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

pub(crate) fn rem(a: &Fpx, m: &Fpx, p: u32) -> Fpx {
    let mut r = a.clone();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p) as u64;
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top] as u64 * lead_inv % p as u64;
        if c != 0 {
            for (i, &mi) in m.iter().enumerate() {
                let idx = top - dm + i;
                let sub = c * mi as u64 % p as u64;
                r[idx] = ((r[idx] as u64 + p as u64 - sub) % p as u64) as u32;
            }
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mul(a: &Fpx, b: &Fpx, p: u32) -> Fpx {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai as u64 * bj as u64) % p as u64;
        }
    }
    let mut out: Fpx = out.into_iter().map(|v| v as u32).collect();
    trim(&mut out);
    out
}

pub(crate) fn mul_mod(a: &Fpx, b: &Fpx, m: &Fpx, p: u32) -> Fpx {
    rem(&mul(a, b, p), m, p)
}

pub(crate) fn pow_mod(base: &Fpx, mut e: u64, m: &Fpx, p: u32) -> Fpx {
    let mut acc: Fpx = vec![1];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &b, m, p);
        }
        b = mul_mod(&b, &b, m, p);
        e >>= 1;
    }
    rem(&acc, m, p)
}

pub(crate) fn sub(a: &Fpx, b: &Fpx, p: u32) -> Fpx {
    let n = a.len().max(b.len());
    let mut out = vec![0u32; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = *a.get(i).unwrap_or(&0) as u64;
        let y = *b.get(i).unwrap_or(&0) as u64;
        *o = ((x + p as u64 - y) % p as u64) as u32;
    }
    trim(&mut out);
    out
}

pub(crate) fn gcd(a: &Fpx, b: &Fpx, p: u32) -> Fpx {
    let mut x = a.clone();
    let mut y = b.clone();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(&lead) = x.last() {
        let inv = inv_mod(lead, p) as u64;
        for c in x.iter_mut() {
            *c = (*c as u64 * inv % p as u64) as u32;
        }
    }
    x
}

/// Rabin-style test: `f` of degree k is irreducible iff it has no factor
/// in common with `x^(p^i) - x` for every `i <= k/2`.
pub(crate) fn is_irreducible(f: &Fpx, p: u32) -> bool {
    let k = f.len() - 1;
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    let x: Fpx = vec![0, 1];
    let mut xp = x.clone();
    for _ in 1..=k / 2 {
        xp = pow_mod(&xp, p as u64, f, p);
        let g = gcd(&sub(&xp, &x, p), f, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}
