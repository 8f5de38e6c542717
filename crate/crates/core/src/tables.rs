//! Published coefficient tables and the closed-form level families, kept as
//! plain data for regression comparison against the solver.

use crate::exact::rational::{int, parse_rational, rat};
use crate::exact::{Polynomial, Rational};
use crate::series::BBPTerm;
use crate::solver::{correction_trace, default_budget};

/// A published correction: head, levels and residual constants `C_0..C_k`.
#[derive(Clone, Debug)]
pub struct CoefficientTable {
    pub id: &'static str,
    pub series: &'static str,
    pub lambda0: Rational,
    /// Monic `Phi` for reciprocal heads, or the head polynomial itself.
    pub head_poly: Polynomial,
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
    /// `K0 = k0_slope * k + k0_offset`.
    pub k0_slope: i64,
    pub k0_offset: i64,
    /// The series the published numbers actually belong to, when that is not
    /// the series stated alongside them.
    pub computed_from: Option<&'static str>,
}

fn q(list: &[&str]) -> Vec<Rational> {
    list.iter().map(|s| parse_rational(s).expect("table entry")).collect()
}

/// `(m + s)^2 + t`.
fn shifted_square(s: Rational, t: Rational) -> Polynomial {
    let lin = Polynomial::linear(int(1), s);
    &(&lin * &lin) + &Polynomial::constant(t)
}

pub fn pi_table() -> CoefficientTable {
    CoefficientTable {
        id: "thm1",
        series: "pi-bbp",
        lambda0: rat(1, 4),
        head_poly: shifted_square(rat(7, 16), rat(-73, 256)),
        a: q(&[
            "21/64",
            "-265/392",
            "-3381/2809",
            "-18921/8464",
            "-3260043/453152",
            "-3740382415/496062002",
            "-435259601465/326597391169",
            "18170745077870217/36157137144200",
            "1184188272901493239625/399390489791710771232",
        ]),
        b: q(&[
            "15/7",
            "9299/2968",
            "20517/4876",
            "94519/21896",
            "25408967/7496524",
            "482484243355/72002790104",
            "133863589556959/4859799720860",
            "-550189873911066313/30042487323672220",
            "55409761792537711960915/5291704918098810592904",
        ]),
        c: q(&[
            "-315/4096",
            "-11925/229376",
            "-108675/1736704",
            "-1686825/12058624",
            "-287025525/285212672",
            "-4009909971375/528448749568",
            "-27702923551875/2739417382912",
            "580053423565590975/114135803101184",
            "-457280686810171702603125/30346857643463671808",
            "-197080602286603349404715625/1608316872287169019904",
        ]),
        k0_slope: 2,
        k0_offset: 5,
        computed_from: None,
    }
}

pub fn catalan_table() -> CoefficientTable {
    CoefficientTable {
        id: "thm3",
        series: "catalan-bbp",
        lambda0: rat(-3, 128),
        head_poly: shifted_square(rat(13, 72), rat(41, 432)),
        a: q(&[
            "-517/23328",
            "366823315/821111808",
            "-975884794104398189/98093762087712545025",
            "1518828040567790867982188908085299115/24627466973909279332577879325543168",
        ]),
        b: q(&[
            "156655/148896",
            "-73939238279831/163855572930720",
            "-1932406340618716298628867667/299122227350085279497481360",
            "10414320422851149518238529301402392329619615007/1125439555781241535752796061860324225756510608",
        ]),
        c: q(&[
            "-235235/248832",
            "166904608325/395200954368",
            "-171770824494197747/40882919041278148608",
            "1883922668487810936804537501055/7270540656226904507330240446464",
            "-59816694319657990230589749754634406261775/191377827680729835340592443669705291028496384",
        ]),
        k0_slope: 2,
        k0_offset: 5,
        computed_from: None,
    }
}

pub fn pi2_table() -> CoefficientTable {
    CoefficientTable {
        id: "thm5",
        series: "pi2-bbp",
        lambda0: rat(-10935, 5824),
        head_poly: shifted_square(rat(3473, 10920), rat(508433, 13249600)),
        a: q(&[
            "1704001969/54257112000",
            "-22377711469278547658588675/55399448826908967430750464",
            "-338155884480620847387677263213133005773122041905270/6634895805691977782779752766105114022452560309751729",
        ]),
        b: q(&[
            "2133779424499/12405134334320",
            "7838462085871364023219390913487412021/6662364404905290370545187619443579824",
            "518071383229948104130947807715226040921415380062488629146343414684409/258632973680067531610825571620741735163688602840992494501823795966560",
        ]),
        c: q(&[
            "1704001969/28937126400",
            "895108458771141906343547/37631431943365237081767936",
            "33074676617409163665475129038532721493305/27282731409796850283137568847626580833927168",
            "51782290831323026508865202336606730861855228893902257466379094191/25645536505061295272046603371156784994696908444725810442196683325440",
        ]),
        k0_slope: 2,
        k0_offset: 5,
        computed_from: Some("pi2-bbp-first-row"),
    }
}

pub fn ramanujan_table() -> CoefficientTable {
    CoefficientTable {
        id: "ramanujan",
        series: "ramanujan-inv-pi",
        lambda0: rat(128, 3),
        head_poly: Polynomial::new(vec![rat(128, 27), rat(128, 3)]),
        a: q(&[
            "32/81",
            "-7/324",
            "19856/3969",
            "1396171/4620243",
            "-818973874600/3222301435929",
            "7676419604757068/881904503553129",
        ]),
        b: q(&[
            "10/9",
            "27/7",
            "-145795/156366",
            "15549372115/4455381114",
            "24496617933181/3948754138854",
            "-535521415681420831/571477212182467206",
        ]),
        c: q(&[
            "7/18",
            "49/5832",
            "-2482/59049",
            "2792342/219839427",
            "9239028400/2861932547871",
            "-15394944382400/547865648052993",
            "5377668984891011200/100647847362777935517",
        ]),
        k0_slope: 2,
        k0_offset: 1,
        computed_from: None,
    }
}

pub fn coefficient_tables() -> Vec<CoefficientTable> {
    vec![pi_table(), catalan_table(), pi2_table(), ramanujan_table()]
}

pub fn coefficient_table(id: &str) -> Option<CoefficientTable> {
    coefficient_tables().into_iter().find(|t| t.id == id)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub item: String,
    pub published: Rational,
    pub solved: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableComparison {
    pub table: &'static str,
    pub series: String,
    /// Number of published values compared.
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
    pub error: Option<String>,
}

impl TableComparison {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.mismatches.is_empty()
    }
}

/// Solves `term` to the table's depth and compares every published value:
/// `lambda0`, the head coefficients, each `a_j`, `b_j`, `C_j` and `K0`.
pub fn compare_table(table: &CoefficientTable, term: &BBPTerm) -> TableComparison {
    let mut out = TableComparison {
        table: table.id,
        series: term.name.clone(),
        checked: 0,
        mismatches: Vec::new(),
        error: None,
    };
    let k = table.a.len();
    let (cf, trace) = match correction_trace(term, k, default_budget(k)) {
        Ok(r) => r,
        Err(e) => {
            out.error = Some(e.to_string());
            return out;
        }
    };
    let mut check = |item: String, published: &Rational, solved: &Rational| {
        out.checked += 1;
        if published != solved {
            out.mismatches.push(Mismatch {
                item,
                published: published.clone(),
                solved: solved.clone(),
            });
        }
    };
    check("lambda0".into(), &table.lambda0, &cf.lambda0);
    let width = table.head_poly.coeffs().len().max(cf.head_poly.coeffs().len());
    for i in 0..width {
        check(format!("head[m^{i}]"), &table.head_poly.coeff(i), &cf.head_poly.coeff(i));
    }
    for (j, level) in cf.levels.iter().enumerate() {
        check(format!("a_{}", j + 1), &table.a[j], &level.a);
        check(format!("b_{}", j + 1), &table.b[j], &level.b);
    }
    for (j, info) in trace.iter().enumerate() {
        check(format!("C_{j}"), &table.c[j], &info.ck);
        let k0 = int(table.k0_slope * j as i64 + table.k0_offset);
        check(format!("K0 at k={j}"), &k0, &int(info.k0));
    }
    out
}

/// Closed-form level `(a_k, b_k)` of the three conjectured families, and
/// their reciprocal heads `lambda0 / (m + phi0)`.
pub mod families {
    use super::*;

    pub fn catalan_cb_level(k: i64) -> (Rational, Rational) {
        let a = Rational::new(
            (2 * k.pow(3) * (2 * k - 1).pow(3)).into(),
            ((4 * k + 1) * (4 * k - 1).pow(2) * (4 * k - 3)).into(),
        );
        let b = Rational::new(
            (4 * k * k + 2 * k - 1).into(),
            (2 * (4 * k - 1) * (4 * k + 3)).into(),
        );
        (a, b)
    }

    pub fn ln2_level(k: i64) -> (Rational, Rational) {
        (int(-2 * k * k), int(3 * k - 2))
    }

    pub fn sq4m1_level(k: i64) -> (Rational, Rational) {
        (Rational::new(k.pow(4).into(), (4 * (2 * k - 1) * (2 * k + 1)).into()), rat(-1, 4))
    }

    pub fn catalan_cb_head() -> (Rational, Rational) {
        (rat(1, 2), rat(1, 6))
    }

    pub fn ln2_head() -> (Rational, Rational) {
        (int(2), int(1))
    }

    pub fn sq4m1_head() -> (Rational, Rational) {
        (rat(1, 16), rat(-1, 4))
    }
}
