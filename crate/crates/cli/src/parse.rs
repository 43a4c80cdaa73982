use tetrablock::C64;

/// Parse one complex coordinate: `re,im`, `(re,im)` or `a+bi`.
pub fn complex(s: &str) -> Result<C64, String> {
    let t = s.trim();
    let t = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(t);
    let z = match t.split_once(',') {
        Some((re, im)) => {
            let re: f64 = re.trim().parse().map_err(|_| format!("bad real part in {s:?}"))?;
            let im: f64 = im.trim().parse().map_err(|_| format!("bad imaginary part in {s:?}"))?;
            C64::new(re, im)
        }
        None => t
            .parse::<C64>()
            .map_err(|_| format!("cannot parse {s:?} as a complex number"))?,
    };
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(format!("non-finite coordinate {s:?}"))
    }
}

/// Wrap `-1.5,0`-style tokens in parentheses so they are not taken for flags.
pub fn guard_negative(arg: std::ffi::OsString) -> std::ffi::OsString {
    match arg.to_str() {
        Some(s)
            if s.contains(',')
                && s.starts_with('-')
                && s[1..].starts_with(|c: char| c.is_ascii_digit() || c == '.') =>
        {
            format!("({s})").into()
        }
        _ => arg,
    }
}

pub fn coords<const N: usize>(args: &[String]) -> Result<[C64; N], String> {
    if args.len() != N {
        return Err(format!("expected {N} coordinates, got {}", args.len()));
    }
    let mut out = [C64::new(0.0, 0.0); N];
    for (slot, a) in out.iter_mut().zip(args) {
        *slot = complex(a)?;
    }
    Ok(out)
}
