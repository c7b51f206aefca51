//! Plain-text dataset and result formats.
//!
//! All files are delimited text (tab or comma, auto-detected from the
//! first data line) with `#` comment lines. Numbers serialize with the
//! shortest round-trip decimal representation, so outputs are byte-stable
//! across platforms and runs.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::metrics::CumulativeDistribution;
use crate::points::PointSet;
use crate::sampler::{GraphSample, SampleResult};

/// One parsed edge-list line: `source, target, weight` plus its 1-based
/// line number for error reporting downstream.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeRecord {
    pub source: String,
    pub target: String,
    pub weight: f64,
    pub line: u64,
}

fn detect_delimiter(line: &str) -> char {
    if line.contains('\t') {
        '\t'
    } else {
        ','
    }
}

fn is_data_line(line: &str) -> bool {
    let trimmed = line.trim();
    !trimmed.is_empty() && !trimmed.starts_with('#')
}

/// Parses an edge list: one edge per line, exactly three fields
/// (source label, target label, weight > 0). Lines beginning with `#`
/// and blank lines are ignored. An empty file parses to an empty list.
pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Vec<EdgeRecord>> {
    let mut records = Vec::new();
    let mut delimiter = None;
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let line_no = idx as u64 + 1;
        if !is_data_line(&line) {
            continue;
        }
        let delim = *delimiter.get_or_insert_with(|| detect_delimiter(&line));
        let fields: Vec<&str> = line.split(delim).map(str::trim).collect();
        if fields.len() != 3 {
            return Err(Error::parse(
                line_no,
                format!("expected 3 fields, got {}: '{}'", fields.len(), line.trim()),
            ));
        }
        let weight: f64 = fields[2].parse().map_err(|_| {
            Error::parse(line_no, format!("cannot parse weight '{}'", fields[2]))
        })?;
        if !weight.is_finite() || weight <= 0.0 {
            return Err(Error::parse(
                line_no,
                format!("edge weight must be > 0, got {weight}"),
            ));
        }
        records.push(EdgeRecord {
            source: fields[0].to_string(),
            target: fields[1].to_string(),
            weight,
            line: line_no,
        });
    }
    Ok(records)
}

pub fn read_edge_list_path(path: &Path) -> Result<Vec<EdgeRecord>> {
    read_edge_list(BufReader::new(File::open(path)?))
}

/// Parses a point table: one point per line, a constant number of finite
/// coordinates. An optional header line (any line whose fields do not all
/// parse as numbers) declares the columns; a first header field named `id`
/// marks a leading id column, which is skipped in the data rows.
pub fn read_points<R: BufRead>(reader: R) -> Result<PointSet> {
    let mut delimiter = None;
    let mut has_id_column = false;
    let mut dim: Option<usize> = None;
    let mut coords: Vec<f64> = Vec::new();
    let mut saw_header = false;

    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let line_no = idx as u64 + 1;
        if !is_data_line(&line) {
            continue;
        }
        let delim = *delimiter.get_or_insert_with(|| detect_delimiter(&line));
        let fields: Vec<&str> = line.split(delim).map(str::trim).collect();

        if dim.is_none() && !saw_header {
            let all_numeric = fields.iter().all(|f| f.parse::<f64>().is_ok());
            if !all_numeric {
                saw_header = true;
                has_id_column = fields
                    .first()
                    .is_some_and(|f| f.eq_ignore_ascii_case("id"));
                let n = fields.len() - usize::from(has_id_column);
                if n == 0 {
                    return Err(Error::parse(line_no, "header declares no coordinates"));
                }
                dim = Some(n);
                continue;
            }
        }

        let expected = dim.map(|d| d + usize::from(has_id_column));
        if let Some(expected) = expected {
            if fields.len() != expected {
                return Err(Error::parse(
                    line_no,
                    format!("expected {expected} fields, got {}", fields.len()),
                ));
            }
        } else {
            dim = Some(fields.len());
        }

        for field in fields.iter().skip(usize::from(has_id_column)) {
            let value: f64 = field.parse().map_err(|_| {
                Error::parse(line_no, format!("cannot parse coordinate '{field}'"))
            })?;
            if !value.is_finite() {
                return Err(Error::parse(
                    line_no,
                    format!("non-finite coordinate: {value}"),
                ));
            }
            coords.push(value);
        }
    }

    match dim {
        Some(d) => PointSet::new(d, coords),
        None => Err(Error::InvalidInput("point file contains no data rows".into())),
    }
}

pub fn read_points_path(path: &Path) -> Result<PointSet> {
    read_points(BufReader::new(File::open(path)?))
}

/// Parses a region file: one object (node label, or point id for point
/// data) per line, `#` comments and blank lines ignored.
pub fn read_region<R: BufRead>(reader: R) -> Result<Vec<String>> {
    let mut members = Vec::new();
    for line in reader.lines() {
        let line = line?;
        if is_data_line(&line) {
            members.push(line.trim().to_string());
        }
    }
    Ok(members)
}

/// Which kind of dataset a sample file describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleKind {
    Graph,
    Points,
}

impl SampleKind {
    fn as_str(self) -> &'static str {
        match self {
            SampleKind::Graph => "graph",
            SampleKind::Points => "points",
        }
    }
}

/// One sample member: the node label for graphs, or the point id plus its
/// coordinates for point data.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleMember {
    pub id: String,
    pub coords: Vec<f64>,
}

/// A sample result file: a `#`-prefixed `key: value` header echoing the
/// config, dataset identity and counts, then one representative per line —
/// graphs in ascending label order, points in ascending id order.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleFile {
    pub kind: SampleKind,
    pub dataset: String,
    pub sha256: Option<String>,
    pub log_base: f64,
    pub threshold: f64,
    pub radius: Option<f64>,
    pub step: Option<f64>,
    /// Number of candidate objects the selection ran over (the dataset
    /// size for global samples, the region size for local ones).
    pub objects: u64,
    pub selected: u64,
    pub members: Vec<SampleMember>,
}

impl SampleFile {
    pub fn for_graph(
        sample: &GraphSample,
        graph: &WeightedGraph,
        dataset: &str,
        sha256: Option<String>,
    ) -> Self {
        Self::for_graph_selection(
            &sample.result,
            graph.node_count() as u64,
            graph,
            dataset,
            sha256,
        )
    }

    /// Builds a graph sample file from an explicit selection, with the
    /// candidate count supplied by the caller (region size for local runs).
    pub fn for_graph_selection(
        result: &SampleResult,
        objects: u64,
        graph: &WeightedGraph,
        dataset: &str,
        sha256: Option<String>,
    ) -> Self {
        let mut labels: Vec<String> = result
            .selected
            .iter()
            .map(|&o| graph.label(o).to_string())
            .collect();
        labels.sort_unstable();
        SampleFile {
            kind: SampleKind::Graph,
            dataset: dataset.to_string(),
            sha256,
            log_base: result.config.log_base(),
            threshold: result.config.threshold(),
            radius: None,
            step: None,
            objects,
            selected: labels.len() as u64,
            members: labels
                .into_iter()
                .map(|id| SampleMember {
                    id,
                    coords: Vec::new(),
                })
                .collect(),
        }
    }

    pub fn for_points(
        result: &SampleResult,
        objects: u64,
        points: &PointSet,
        dataset: &str,
        sha256: Option<String>,
    ) -> Self {
        let members = result
            .selected
            .iter()
            .map(|&o| SampleMember {
                id: o.to_string(),
                coords: points.point(o).to_vec(),
            })
            .collect();
        SampleFile {
            kind: SampleKind::Points,
            dataset: dataset.to_string(),
            sha256,
            log_base: result.config.log_base(),
            threshold: result.config.threshold(),
            radius: result.config.radius(),
            step: result.config.step(),
            objects,
            selected: result.selected.len() as u64,
            members,
        }
    }

    /// Member ids as a sorted list, for set comparisons.
    pub fn member_ids(&self) -> Vec<&str> {
        let mut ids: Vec<&str> = self.members.iter().map(|m| m.id.as_str()).collect();
        ids.sort_unstable();
        ids
    }
}

fn opt_num(v: Option<f64>) -> String {
    match v {
        Some(v) => format!("{v}"),
        None => "-".to_string(),
    }
}

fn parse_opt_num(s: &str, line: u64) -> Result<Option<f64>> {
    if s == "-" {
        return Ok(None);
    }
    s.parse::<f64>()
        .map(Some)
        .map_err(|_| Error::parse(line, format!("cannot parse number '{s}'")))
}

/// Writes a sample file. Output is byte-identical across runs with equal
/// inputs.
pub fn write_sample<W: Write>(sample: &SampleFile, mut writer: W) -> Result<()> {
    writeln!(writer, "# kind: {}", sample.kind.as_str())?;
    writeln!(writer, "# dataset: {}", sample.dataset)?;
    writeln!(
        writer,
        "# sha256: {}",
        sample.sha256.as_deref().unwrap_or("-")
    )?;
    writeln!(writer, "# log_base: {}", sample.log_base)?;
    writeln!(writer, "# threshold: {}", sample.threshold)?;
    writeln!(writer, "# radius: {}", opt_num(sample.radius))?;
    writeln!(writer, "# step: {}", opt_num(sample.step))?;
    writeln!(writer, "# objects: {}", sample.objects)?;
    writeln!(writer, "# selected: {}", sample.selected)?;
    for member in &sample.members {
        if member.coords.is_empty() {
            writeln!(writer, "{}", member.id)?;
        } else {
            let coords: Vec<String> = member.coords.iter().map(|c| format!("{c}")).collect();
            writeln!(writer, "{},{}", member.id, coords.join(","))?;
        }
    }
    Ok(())
}

/// Reads a sample file back. Together with the original dataset this is
/// enough to re-run the selection and reproduce the member set.
pub fn read_sample<R: BufRead>(reader: R) -> Result<SampleFile> {
    let mut header: HashMap<String, (String, u64)> = HashMap::new();
    let mut member_lines: Vec<(String, u64)> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let line_no = idx as u64 + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some((key, value)) = comment.split_once(':') {
                header.insert(
                    key.trim().to_string(),
                    (value.trim().to_string(), line_no),
                );
            }
            continue;
        }
        member_lines.push((trimmed.to_string(), line_no));
    }

    let get = |key: &str| -> Result<(String, u64)> {
        header
            .get(key)
            .cloned()
            .ok_or_else(|| Error::InvalidInput(format!("sample file misses header key '{key}'")))
    };
    let (kind_str, kind_line) = get("kind")?;
    let kind = match kind_str.as_str() {
        "graph" => SampleKind::Graph,
        "points" => SampleKind::Points,
        other => {
            return Err(Error::parse(kind_line, format!("unknown sample kind '{other}'")));
        }
    };

    // graph members are whole-line labels (labels may contain commas);
    // point members are id followed by coordinates
    let mut members = Vec::with_capacity(member_lines.len());
    for (line, line_no) in member_lines {
        match kind {
            SampleKind::Graph => members.push(SampleMember {
                id: line,
                coords: Vec::new(),
            }),
            SampleKind::Points => {
                let mut fields = line.split(',').map(str::trim);
                let id = fields.next().unwrap().to_string();
                let mut coords = Vec::new();
                for field in fields {
                    let value: f64 = field.parse().map_err(|_| {
                        Error::parse(line_no, format!("cannot parse coordinate '{field}'"))
                    })?;
                    coords.push(value);
                }
                members.push(SampleMember { id, coords });
            }
        }
    }
    let num = |key: &str| -> Result<f64> {
        let (value, line) = get(key)?;
        value
            .parse()
            .map_err(|_| Error::parse(line, format!("cannot parse number '{value}'")))
    };
    let (radius_str, radius_line) = get("radius")?;
    let (step_str, step_line) = get("step")?;
    let (sha, _) = get("sha256")?;
    let selected = num("selected")? as u64;
    if selected != members.len() as u64 {
        return Err(Error::InvalidInput(format!(
            "sample file declares {selected} members but contains {}",
            members.len()
        )));
    }
    Ok(SampleFile {
        kind,
        dataset: get("dataset")?.0,
        sha256: (sha != "-").then_some(sha),
        log_base: num("log_base")?,
        threshold: num("threshold")?,
        radius: parse_opt_num(&radius_str, radius_line)?,
        step: parse_opt_num(&step_str, step_line)?,
        objects: num("objects")? as u64,
        selected,
        members,
    })
}

pub fn read_sample_path(path: &Path) -> Result<SampleFile> {
    read_sample(BufReader::new(File::open(path)?))
}

/// Writes a distribution as a two-column table `value,cumulative_fraction`,
/// ascending by value.
pub fn write_distribution<W: Write>(
    distribution: &CumulativeDistribution,
    mut writer: W,
) -> Result<()> {
    writeln!(writer, "value,cumulative_fraction")?;
    for &(value, fraction) in distribution.entries() {
        writeln!(writer, "{value},{fraction}")?;
    }
    Ok(())
}

/// Writes a 2-d density histogram as `cell_x,cell_y,count`, sorted by cell
/// coordinates for stable output.
pub fn write_density_histogram<W: Write>(
    histogram: &HashMap<(i64, i64), u64>,
    mut writer: W,
) -> Result<()> {
    writeln!(writer, "cell_x,cell_y,count")?;
    let mut cells: Vec<(&(i64, i64), &u64)> = histogram.iter().collect();
    cells.sort_unstable_by_key(|(&cell, _)| cell);
    for (&(x, y), count) in cells {
        writeln!(writer, "{x},{y},{count}")?;
    }
    Ok(())
}

/// SHA-256 of a file's bytes, lower-case hex. Used to record dataset
/// identity in sample headers.
pub fn file_sha256(path: &Path) -> Result<String> {
    let mut file = File::open(path)?;
    let mut hasher = Sha256::new();
    let mut buf = [0u8; 64 * 1024];
    loop {
        let n = file.read(&mut buf)?;
        if n == 0 {
            break;
        }
        hasher.update(&buf[..n]);
    }
    Ok(format!("{:x}", hasher.finalize()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::SamplerConfig;
    use crate::sampler::sample_graph;

    #[test]
    fn parses_tab_and_comma_edges() {
        let records = read_edge_list("a\tb\t3\n".as_bytes()).unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].source, "a");
        assert_eq!(records[0].target, "b");
        assert_eq!(records[0].weight, 3.0);

        let records = read_edge_list("a,b,3\nb,c,1.5\n".as_bytes()).unwrap();
        assert_eq!(records.len(), 2);
        assert_eq!(records[1].weight, 1.5);
    }

    #[test]
    fn edge_parse_errors_carry_line_numbers() {
        let err = read_edge_list("a,b\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");

        let err = read_edge_list("# header\na,b,1\na,c,x\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");

        let err = read_edge_list("a,b,0\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
    }

    #[test]
    fn empty_edge_list_is_empty() {
        assert!(read_edge_list("".as_bytes()).unwrap().is_empty());
        assert!(read_edge_list("# only comments\n\n".as_bytes())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn parses_points_and_infers_dimension() {
        let ps = read_points("0,0\n1,1\n".as_bytes()).unwrap();
        assert_eq!(ps.len(), 2);
        assert_eq!(ps.dim(), 2);

        let ps = read_points("1\t2\t3\n4\t5\t6\n".as_bytes()).unwrap();
        assert_eq!(ps.dim(), 3);
    }

    #[test]
    fn point_field_count_error_names_line() {
        let err = read_points("1,2\n3\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn point_header_with_id_column() {
        let ps = read_points("id,x,y\n7,1.5,2.5\n8,3,4\n".as_bytes()).unwrap();
        assert_eq!(ps.len(), 2);
        assert_eq!(ps.dim(), 2);
        assert_eq!(ps.point(0), &[1.5, 2.5]);
    }

    #[test]
    fn point_header_without_id_column() {
        let ps = read_points("x,y\n1,2\n".as_bytes()).unwrap();
        assert_eq!(ps.dim(), 2);
        assert_eq!(ps.point(0), &[1.0, 2.0]);
    }

    #[test]
    fn non_finite_coordinates_rejected_with_line() {
        let err = read_points("1,2\n3,inf\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn sample_file_round_trip() {
        let g = WeightedGraph::from_triples([
            ("a", "b", 3.0),
            ("b", "c", 1.0),
            ("c", "d", 2.0),
            ("a", "c", 1.0),
        ])
        .unwrap();
        let cfg = SamplerConfig::new(2.0).unwrap();
        let sample = sample_graph(&g, &cfg).unwrap();
        let file = SampleFile::for_graph(&sample, &g, "four.csv", Some("cafe".into()));

        let mut bytes = Vec::new();
        write_sample(&file, &mut bytes).unwrap();
        let text = String::from_utf8(bytes.clone()).unwrap();
        // members in ascending label order
        let members: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(members, ["a", "b", "d"]);

        let back = read_sample(bytes.as_slice()).unwrap();
        assert_eq!(back, file);
    }

    #[test]
    fn empty_sample_writes_header_only() {
        let file = SampleFile {
            kind: SampleKind::Graph,
            dataset: "x".into(),
            sha256: None,
            log_base: 2.0,
            threshold: 1.0,
            radius: None,
            step: None,
            objects: 0,
            selected: 0,
            members: Vec::new(),
        };
        let mut bytes = Vec::new();
        write_sample(&file, &mut bytes).unwrap();
        let text = String::from_utf8(bytes).unwrap();
        assert!(text.lines().all(|l| l.starts_with('#')));
        let back = read_sample(text.as_bytes()).unwrap();
        assert_eq!(back, file);
    }

    #[test]
    fn point_sample_members_carry_coordinates() {
        let ps = PointSet::from_rows(2, vec![vec![0.0, 0.0], vec![0.0, 40.0], vec![0.0, 90.0]])
            .unwrap();
        let cfg = SamplerConfig::new(2.0)
            .unwrap()
            .with_radius_step(50.0, 10.0)
            .unwrap();
        let result = crate::sampler::sample_points(&ps, &cfg).unwrap();
        let file = SampleFile::for_points(&result, ps.len() as u64, &ps, "pts.csv", None);
        let mut bytes = Vec::new();
        write_sample(&file, &mut bytes).unwrap();
        let text = String::from_utf8(bytes.clone()).unwrap();
        assert!(text.contains("0,0,0\n"));
        assert!(text.contains("1,0,40\n"));
        let back = read_sample(bytes.as_slice()).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.radius, Some(50.0));
        assert_eq!(back.step, Some(10.0));
    }

    #[test]
    fn distribution_serializes_sorted_two_column() {
        let d = CumulativeDistribution::from_values(&[5.0]);
        let mut bytes = Vec::new();
        write_distribution(&d, &mut bytes).unwrap();
        assert_eq!(
            String::from_utf8(bytes).unwrap(),
            "value,cumulative_fraction\n5,1\n"
        );

        let empty = CumulativeDistribution::from_values(&[]);
        let mut bytes = Vec::new();
        write_distribution(&empty, &mut bytes).unwrap();
        assert_eq!(
            String::from_utf8(bytes).unwrap(),
            "value,cumulative_fraction\n"
        );

        let star = WeightedGraph::from_triples([
            ("hub", "x", 1.0),
            ("hub", "y", 1.0),
            ("hub", "z", 1.0),
        ])
        .unwrap();
        let d = crate::metrics::cumulative_degree_distribution(&star);
        let mut bytes = Vec::new();
        write_distribution(&d, &mut bytes).unwrap();
        let text = String::from_utf8(bytes).unwrap();
        assert_eq!(text.lines().count(), 3); // header + 2 data rows
    }

    #[test]
    fn region_file_skips_comments() {
        let region = read_region("# region\na\n\nb\n".as_bytes()).unwrap();
        assert_eq!(region, ["a", "b"]);
    }

    #[test]
    fn truncated_sample_file_is_rejected() {
        let text = "# kind: graph\n# dataset: x\n# sha256: -\n# log_base: 2\n# threshold: 1\n# radius: -\n# step: -\n# objects: 4\n# selected: 3\na\nb\n";
        assert!(read_sample(text.as_bytes()).is_err());
    }

    #[test]
    fn graph_sample_labels_may_contain_commas() {
        let g = WeightedGraph::from_triples([("Doe, Jane", "Roe, Max", 2.0)]).unwrap();
        let cfg = SamplerConfig::new(2.0).unwrap();
        let sample = sample_graph(&g, &cfg).unwrap();
        let file = SampleFile::for_graph(&sample, &g, "tabbed.tsv", None);
        let mut bytes = Vec::new();
        write_sample(&file, &mut bytes).unwrap();
        let back = read_sample(bytes.as_slice()).unwrap();
        assert_eq!(back.member_ids(), ["Doe, Jane", "Roe, Max"]);
    }
}
