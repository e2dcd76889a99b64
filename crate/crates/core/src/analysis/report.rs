/// Column names, in output order.
pub const CSV_HEADER: [&str; 5] = ["image", "method", "rate", "metric", "value"];

/// One measurement: a metric of one image under one method and rate.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub image: String,
    pub method: String,
    /// Embedding rate in percent; 0 for the untouched cover.
    pub rate: f64,
    pub metric: String,
    pub value: f64,
}

impl ReportRow {
    pub fn new(
        image: impl Into<String>,
        method: impl Into<String>,
        rate: f64,
        metric: impl Into<String>,
        value: f64,
    ) -> Self {
        Self {
            image: image.into(),
            method: method.into(),
            rate,
            metric: metric.into(),
            value,
        }
    }
}

/// Renders a number for CSV. Infinities become `inf` / `-inf`, NaN becomes
/// `nan`, everything else uses the shortest round-tripping decimal form.
pub fn format_value(v: f64) -> String {
    if v.is_nan() {
        "nan".to_owned()
    } else if v == f64::INFINITY {
        "inf".to_owned()
    } else if v == f64::NEG_INFINITY {
        "-inf".to_owned()
    } else {
        format!("{v}")
    }
}

/// Serializes rows as comma-separated values with a header line and LF line
/// endings.
pub fn emit_csv(rows: &[ReportRow]) -> Vec<u8> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    // writing into a Vec cannot fail
    writer.write_record(CSV_HEADER).expect("in-memory write");
    for row in rows {
        writer.write_record(row.fields()).expect("in-memory write");
    }
    writer.into_inner().expect("in-memory flush")
}

impl ReportRow {
    fn fields(&self) -> [String; 5] {
        [
            self.image.clone(),
            self.method.clone(),
            format_value(self.rate),
            self.metric.clone(),
            format_value(self.value),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_only() {
        assert_eq!(emit_csv(&[]), b"image,method,rate,metric,value\n");
    }

    #[test]
    fn one_row() {
        let rows = [ReportRow::new(
            "lena",
            "proposed-mu1",
            30.0,
            "psnr",
            f64::INFINITY,
        )];
        let out = String::from_utf8(emit_csv(&rows)).unwrap();
        assert_eq!(
            out,
            "image,method,rate,metric,value\nlena,proposed-mu1,30,psnr,inf\n"
        );
    }

    #[test]
    fn deterministic_and_parseable() {
        let rows = vec![
            ReportRow::new("a,b", "lsb1", 10.0, "q_index", 0.998_75),
            ReportRow::new("c\"d", "lsbmr", 50.0, "bit_rate", 0.5),
        ];
        let first = emit_csv(&rows);
        assert_eq!(first, emit_csv(&rows.clone()));
        let mut reader = csv::Reader::from_reader(first.as_slice());
        let parsed: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
        assert_eq!(parsed.len(), 2);
        assert_eq!(&parsed[0][0], "a,b");
        assert_eq!(parsed[0][4].parse::<f64>().unwrap(), 0.998_75);
        assert_eq!(&parsed[1][0], "c\"d");
    }
}
