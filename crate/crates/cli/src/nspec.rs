/// Parses `"a,b,c"` or the inclusive range `"a..b"`.
pub fn parse(spec: &str) -> Result<Vec<u64>, String> {
    let num = |s: &str| {
        s.trim()
            .parse::<u64>()
            .map_err(|_| format!("bad --n value {s:?}: expected \"a,b,c\" or \"a..b\""))
    };
    if let Some((a, b)) = spec.split_once("..") {
        let (a, b) = (num(a)?, num(b)?);
        if a > b {
            return Err(format!("empty range {spec:?}"));
        }
        return Ok((a..=b).collect());
    }
    spec.split(',').map(num).collect()
}

#[cfg(test)]
mod tests {
    use super::parse;

    #[test]
    fn forms() {
        assert_eq!(parse("15,25,50").unwrap(), [15, 25, 50]);
        assert_eq!(parse("3..6").unwrap(), [3, 4, 5, 6]);
        assert_eq!(parse("7").unwrap(), [7]);
        assert!(parse("6..3").is_err());
        assert!(parse("a,b").is_err());
        assert!(parse("").is_err());
    }
}
