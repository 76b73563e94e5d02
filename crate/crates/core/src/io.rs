//! File formats: event records, histograms, band tables, and toy ensembles.
//!
//! Everything is comma-separated text with a header line. Reals are written
//! with 17 significant digits (`{:.16e}`), which round-trips `f64` exactly
//! and keeps output hashes stable across platforms.

use std::io::{BufRead, BufWriter, Write};
use std::path::Path;

use crate::analysis::{BandTable, EnsembleSummary, Histogram};
use crate::error::{Error, Result};
use crate::kinematics::{Event, Model};

pub const EVENT_HEADER: &str = "event_id,model,sz,cos_theta_lambda,phi_lambda,cos_theta_m,phi_m,cos_theta_p,phi_p,alpha";

fn real(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes the event file: header, then one record per line in event order.
pub fn write_events<W: Write>(out: W, events: &[Event]) -> Result<()> {
    let mut w = BufWriter::new(out);
    writeln!(w, "{EVENT_HEADER}")?;
    for e in events {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{}",
            e.event_id,
            e.model.as_str(),
            e.sz,
            real(e.cos_theta_lambda),
            real(e.phi_lambda),
            real(e.cos_theta_m),
            real(e.phi_m),
            real(e.cos_theta_p),
            real(e.phi_p),
            real(e.alpha),
        )?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_events_to_path(path: &Path, events: &[Event]) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_events(file, events)
}

fn parse_field<T: std::str::FromStr>(line: usize, name: &str, raw: &str) -> Result<T> {
    raw.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("bad {name}: `{raw}`"),
    })
}

/// Reads an event file, reporting the first offending line on failure.
/// RNG provenance is not serialized; `seed`/`stream_index` come back as 0.
pub fn read_events<R: std::io::Read>(input: R) -> Result<Vec<Event>> {
    let reader = std::io::BufReader::new(input);
    let mut events = Vec::new();
    let mut lines = reader.lines().enumerate();
    match lines.next() {
        Some((_, Ok(header))) if header.trim() == EVENT_HEADER => {}
        Some((_, Ok(other))) => {
            return Err(Error::Parse {
                line: 1,
                msg: format!("bad header: `{other}`"),
            })
        }
        Some((_, Err(e))) => return Err(e.into()),
        None => {
            return Err(Error::Parse {
                line: 1,
                msg: "empty file".into(),
            })
        }
    }
    for (idx, line) in lines {
        let line_no = idx + 1;
        let line = line?;
        if line.trim().is_empty() {
            return Err(Error::Parse {
                line: line_no,
                msg: "blank line".into(),
            });
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 10 {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected 10 fields, found {}", fields.len()),
            });
        }
        let model: Model = fields[1].parse().map_err(|_| Error::Parse {
            line: line_no,
            msg: format!("bad model: `{}`", fields[1]),
        })?;
        let event = Event {
            event_id: parse_field(line_no, "event_id", fields[0])?,
            model,
            sz: parse_field(line_no, "sz", fields[2])?,
            cos_theta_lambda: parse_field(line_no, "cos_theta_lambda", fields[3])?,
            phi_lambda: parse_field(line_no, "phi_lambda", fields[4])?,
            cos_theta_m: parse_field(line_no, "cos_theta_m", fields[5])?,
            phi_m: parse_field(line_no, "phi_m", fields[6])?,
            cos_theta_p: parse_field(line_no, "cos_theta_p", fields[7])?,
            phi_p: parse_field(line_no, "phi_p", fields[8])?,
            alpha: parse_field(line_no, "alpha", fields[9])?,
            seed: 0,
            stream_index: 0,
        };
        if !(0.0..=std::f64::consts::PI).contains(&event.alpha) {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("alpha = {} outside [0, pi]", event.alpha),
            });
        }
        events.push(event);
    }
    Ok(events)
}

pub fn read_events_from_path(path: &Path) -> Result<Vec<Event>> {
    let file = std::fs::File::open(path)?;
    read_events(file)
}

/// `bin_lo,bin_hi,count` rows.
pub fn write_histogram<W: Write>(out: W, hist: &Histogram) -> Result<()> {
    let mut w = BufWriter::new(out);
    writeln!(w, "bin_lo,bin_hi,count")?;
    for i in 0..hist.n_bins() {
        let (lo, hi) = hist.edges(i);
        writeln!(w, "{},{},{}", real(lo), real(hi), hist.counts()[i])?;
    }
    w.flush()?;
    Ok(())
}

/// `bin_lo,bin_hi,expected_qm,err_qm,expected_hvt,err_hvt` rows, the
/// Poisson error carried for both hypotheses.
pub fn write_band<W: Write>(out: W, band: &BandTable) -> Result<()> {
    let mut w = BufWriter::new(out);
    writeln!(w, "bin_lo,bin_hi,expected_qm,err_qm,expected_hvt,err_hvt")?;
    for row in &band.rows {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            real(row.lo),
            real(row.hi),
            real(row.expected_qm),
            real(row.err_qm),
            real(row.expected_hvt),
            real(row.err_hvt),
        )?;
    }
    w.flush()?;
    Ok(())
}

/// `toy_id,hypothesis,chi2_qm,chi2_hvt,delta_chi2` rows.
pub fn write_toys<W: Write>(out: W, ensemble: &EnsembleSummary) -> Result<()> {
    let mut w = BufWriter::new(out);
    writeln!(w, "toy_id,hypothesis,chi2_qm,chi2_hvt,delta_chi2")?;
    for r in &ensemble.records {
        writeln!(
            w,
            "{},{},{},{},{}",
            r.toy_id,
            r.hypothesis.as_str(),
            real(r.chi2_qm),
            real(r.chi2_hvt),
            real(r.delta_chi2),
        )?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::{generate, GenConfig};

    #[test]
    fn events_round_trip_exactly() {
        let config = GenConfig::new(Model::Qm, 200, 13).unwrap();
        let events = generate(config).unwrap();
        let mut buf = Vec::new();
        write_events(&mut buf, &events).unwrap();
        let back = read_events(&buf[..]).unwrap();
        assert_eq!(back.len(), events.len());
        for (a, b) in events.iter().zip(&back) {
            assert_eq!(a.event_id, b.event_id);
            assert_eq!(a.model, b.model);
            assert_eq!(a.sz, b.sz);
            // Bit-exact round trip of every real field.
            assert_eq!(a.cos_theta_lambda.to_bits(), b.cos_theta_lambda.to_bits());
            assert_eq!(a.phi_m.to_bits(), b.phi_m.to_bits());
            assert_eq!(a.alpha.to_bits(), b.alpha.to_bits());
        }
    }

    #[test]
    fn truncated_and_corrupt_files_report_line_numbers() {
        let config = GenConfig::new(Model::Hvt, 5, 1).unwrap();
        let events = generate(config).unwrap();
        let mut buf = Vec::new();
        write_events(&mut buf, &events).unwrap();
        let text = String::from_utf8(buf).unwrap();

        // Drop the last field of line 4 (event index 2).
        let mut lines: Vec<&str> = text.lines().collect();
        let shortened = lines[3].rsplit_once(',').unwrap().0.to_string();
        lines[3] = &shortened;
        let corrupt = lines.join("\n");
        match read_events(corrupt.as_bytes()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("expected parse error, got {other:?}"),
        }

        let garbled = text.replacen("hvt", "xyz", 1);
        match read_events(garbled.as_bytes()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }

        match read_events(&b"not,a,header\n"[..]) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn table_writers_emit_headers() {
        let hist = crate::analysis::histogram_alpha([0.1, 0.2, 3.0], 4).unwrap();
        let mut buf = Vec::new();
        write_histogram(&mut buf, &hist).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("bin_lo,bin_hi,count\n"));
        assert_eq!(text.lines().count(), 5);

        let band = crate::analysis::band_table(1000, 4, Default::default());
        let mut buf = Vec::new();
        write_band(&mut buf, &band).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("bin_lo,bin_hi,expected_qm,err_qm,expected_hvt,err_hvt\n"));
        assert_eq!(text.lines().count(), 5);
    }
}
