//! Regradings of the Adams chart into isotropic bidegrees.

use crate::chart::{Chart, Grading};
use crate::report::CheckReport;

/// `(s, t) -> (p, q) = (2t - s, t)`: the homotopy chart of the cofiber of
/// rho, read off the Ext chart.
pub fn crho_chart(ext: &Chart) -> Chart {
    assert_eq!(ext.grading(), Grading::St, "crho_chart expects an (s,t) chart");
    let mut out = Chart::new(Grading::Pq);
    for (k, e) in ext.entries() {
        let (s, t) = (k[0], k[1]);
        out.set(&[2 * t - s, t], e.dim, e.labels.clone());
    }
    out
}

/// Inverse of [`crho_chart`].
pub fn ext_from_crho(crho: &Chart) -> Chart {
    assert_eq!(crho.grading(), Grading::Pq);
    let mut out = Chart::new(Grading::St);
    for (k, e) in crho.entries() {
        let (p, q) = (k[0], k[1]);
        out.set(&[2 * q - p, q], e.dim, e.labels.clone());
    }
    out
}

/// Places `Ext^{s,u}_{A_*}` at `(s, 2u, u)`; Ext over `G_**` is zero off
/// the diagonal `t = 2u`.
pub fn trigraded_ext_g(ext: &Chart) -> Chart {
    assert_eq!(ext.grading(), Grading::St);
    let mut out = Chart::new(Grading::Stu);
    for (k, e) in ext.entries() {
        let (s, u) = (k[0], k[1]);
        out.set(&[s, 2 * u, u], e.dim, e.labels.clone());
    }
    out
}

/// Every class has `q >= 0` and Chow-Novikov degree `p - 2q <= 0`, and
/// the only class with `q = 0` is a single one at `(0, 0)`.
pub fn vanishing_check(chart: &Chart) -> CheckReport {
    let mut report = CheckReport::pass("vanishing: q >= 0, p <= 2q, unit at (0,0)");
    for (k, e) in chart.entries() {
        let (p, q) = (k[0], k[1]);
        if q < 0 {
            report.record_failure(format!("class of dim {} at (p,q)=({p},{q}) with q < 0", e.dim));
        } else if p > 2 * q {
            report.record_failure(format!("class at (p,q)=({p},{q}) with p > 2q"));
        } else if q == 0 && p != 0 {
            report.record_failure(format!("class at (p,q)=({p},0) besides the unit"));
        }
    }
    match chart.dim(&[0, 0]) {
        1 => {}
        d => report.record_failure(format!("dim at (0,0) is {d}, expected 1")),
    }
    report
}
