use std::fmt::Write as _;
use std::path::Path;

use super::{BerCurve, BerPoint};
use crate::error::argument;
use crate::{Error, Result};

pub const CSV_HEADER: &str =
    "p_db,ber_sim_tvd,ber_sim_cdd,ber_theory_lb,ber_upper_bound,floor,n_bits,n_errors_tvd,n_errors_cdd";

/// The CSV text of a curve: reals with nine significant digits.
pub fn render_curve_csv(curve: &BerCurve) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for p in &curve.points {
        let _ = writeln!(
            out,
            "{:.8e},{:.8e},{:.8e},{:.8e},{:.8e},{:.8e},{},{},{}",
            p.p_db,
            p.ber_sim_tvd,
            p.ber_sim_cdd,
            p.ber_theory_lb,
            p.ber_upper_bound,
            p.floor,
            p.n_bits,
            p.n_errors_tvd,
            p.n_errors_cdd
        );
    }
    out
}

fn io_error(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub fn emit_curve_csv(curve: &BerCurve, path: &Path) -> Result<()> {
    std::fs::write(path, render_curve_csv(curve)).map_err(|e| io_error(path, e))
}

/// Inverse of [`render_curve_csv`].
pub fn parse_curve_csv(text: &str) -> Result<BerCurve> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == CSV_HEADER => {}
        other => return Err(argument(format!("unexpected CSV header {other:?}"))),
    }
    let mut points = Vec::new();
    for (i, line) in lines.enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 9 {
            return Err(argument(format!(
                "CSV row {}: expected 9 fields, got {}",
                i + 2,
                fields.len()
            )));
        }
        let real = |j: usize| {
            fields[j]
                .parse::<f64>()
                .map_err(|e| argument(format!("CSV row {}, column {}: {e}", i + 2, j + 1)))
        };
        let int = |j: usize| {
            fields[j]
                .parse::<u64>()
                .map_err(|e| argument(format!("CSV row {}, column {}: {e}", i + 2, j + 1)))
        };
        points.push(BerPoint {
            p_db: real(0)?,
            ber_sim_tvd: real(1)?,
            ber_sim_cdd: real(2)?,
            ber_theory_lb: real(3)?,
            ber_upper_bound: real(4)?,
            floor: real(5)?,
            n_bits: int(6)?,
            n_errors_tvd: int(7)?,
            n_errors_cdd: int(8)?,
        });
    }
    Ok(BerCurve { points })
}

/// A gnuplot script that plots the curve stored at `csv_path` on log axes.
pub fn write_gnuplot_script(csv_path: &Path, script_path: &Path, title: &str) -> Result<()> {
    let csv = csv_path.display();
    let script = format!(
        "set datafile separator ','\n\
         set logscale y\n\
         set format y '10^{{%L}}'\n\
         set xlabel 'P (dB)'\n\
         set ylabel 'BER'\n\
         set key bottom left\n\
         set grid\n\
         set title '{title}'\n\
         plot '{csv}' every ::1 using 1:2 with linespoints title 'TVD (sim)', \\\n\
         \x20    '' every ::1 using 1:3 with linespoints title 'CDD (sim)', \\\n\
         \x20    '' every ::1 using 1:4 with lines title 'theory (optimum weights)', \\\n\
         \x20    '' every ::1 using 1:5 with lines dashtype 2 title 'upper bound', \\\n\
         \x20    '' every ::1 using 1:6 with lines dashtype 3 title 'error floor'\n"
    );
    std::fs::write(script_path, script).map_err(|e| io_error(script_path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point(p_db: f64) -> BerPoint {
        BerPoint {
            p_db,
            ber_sim_tvd: 1.234_567_891_23e-4,
            ber_sim_cdd: 0.5,
            ber_theory_lb: 3.0e-5,
            ber_upper_bound: f64::NAN,
            floor: 0.0,
            n_bits: 2_000_000,
            n_errors_tvd: 247,
            n_errors_cdd: 1_000_000,
        }
    }

    #[test]
    fn empty_curve_is_header_only() {
        assert_eq!(render_curve_csv(&BerCurve::default()), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn rows_use_nine_significant_digits() {
        let text = render_curve_csv(&BerCurve {
            points: vec![point(12.5)],
        });
        let row = text.lines().nth(1).unwrap();
        assert!(row.starts_with("1.25000000e1,1.23456789e-4,5.00000000e-1,"), "{row}");
        assert!(row.ends_with(",NaN,0.00000000e0,2000000,247,1000000"), "{row}");
    }

    #[test]
    fn round_trip_is_stable() {
        let curve = BerCurve {
            points: vec![point(0.0), point(5.0)],
        };
        let text = render_curve_csv(&curve);
        let back = parse_curve_csv(&text).unwrap();
        assert_eq!(render_curve_csv(&back), text);
        assert_eq!(back.points[1].n_errors_tvd, 247);
        assert!((back.points[0].ber_sim_tvd / curve.points[0].ber_sim_tvd - 1.0).abs() < 5e-9);
        assert!(parse_curve_csv("a,b\n").is_err());
        assert!(parse_curve_csv(&format!("{CSV_HEADER}\n1,2,3\n")).is_err());
    }

    #[test]
    fn files_and_io_errors() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.csv");
        emit_curve_csv(
            &BerCurve {
                points: vec![point(1.0)],
            },
            &path,
        )
        .unwrap();
        assert!(std::fs::read_to_string(&path).unwrap().starts_with(CSV_HEADER));
        let gp = dir.path().join("c.gp");
        write_gnuplot_script(&path, &gp, "test").unwrap();
        assert!(std::fs::read_to_string(&gp).unwrap().contains("using 1:6"));
        let bad = dir.path().join("missing").join("c.csv");
        match emit_curve_csv(&BerCurve::default(), &bad) {
            Err(Error::Io { path, .. }) => assert_eq!(path, bad),
            other => panic!("{other:?}"),
        }
    }
}
