//! One function per subcommand; all filesystem access lives here.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use caec::algebra::{basic_generators, close_generators};
use caec::codec::{compression_ratio, dencompress, encompress, plan_layout, EncompressedContainer, Key};
use caec::maca::{build_std, find_maca, maca_profile, pef_positions, MacaProfile, PefStrategy};
use caec::rules::{rule_matrix, Boundary, RuleSpec, FUNDAMENTAL_RULES, MAX_RULE};

use crate::keyfile::{key_parse, key_write};
use crate::pbm::{pbm_read, pbm_write, PbmForm, PbmImage};
use crate::{CliError, CommandResult};

fn ok(stdout: String) -> CommandResult {
    CommandResult {
        code: 0,
        stdout,
        stderr: String::new(),
    }
}

fn read_file(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn load_key(path: &Path) -> Result<(Key, String), CliError> {
    let text = String::from_utf8(read_file(path)?)
        .map_err(|_| CliError::Data(format!("{}: key file is not UTF-8", path.display())))?;
    let (key, warnings) = key_parse(&text)?;
    let mut stderr = String::new();
    for w in warnings {
        let _ = writeln!(stderr, "{w}");
    }
    Ok((key, stderr))
}

pub fn rule_matrix_cmd(rule: u16, boundary: Boundary, m: usize, n: usize) -> Result<CommandResult, CliError> {
    let spec = RuleSpec::new(rule, boundary, m, n)?;
    Ok(ok(rule_matrix(&spec)?.to_dump()))
}

fn join_states(states: &[u64]) -> String {
    if states.is_empty() {
        return "none".into();
    }
    states
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn std_cmd(rule: u16, boundary: Boundary, m: usize, n: usize) -> Result<CommandResult, CliError> {
    let spec = RuleSpec::new(rule, boundary, m, n)?;
    let std = build_std(&spec)?;
    let mut out = String::new();
    let _ = writeln!(out, "attractors: {}", join_states(&std.attractors));
    for (depth, count) in std.depth_histogram().iter().enumerate() {
        let _ = writeln!(out, "depth {depth}: {count} states");
    }
    let _ = writeln!(out, "non-reachable: {}", join_states(&std.non_reachable));
    Ok(ok(out))
}

fn format_k(attractor_dim: usize) -> String {
    if attractor_dim <= 20 {
        (1u64 << attractor_dim).to_string()
    } else {
        format!("2^{attractor_dim}")
    }
}

/// PEF cells as 1-based (row,col) pairs: "(1,2),(2,1)".
fn format_pef(profile: &MacaProfile) -> String {
    profile
        .pef_positions
        .iter()
        .map(|&p| format!("({},{})", p / profile.spec.n + 1, p % profile.spec.n + 1))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn profile_cmd(key_path: &Path) -> Result<CommandResult, CliError> {
    let (key, stderr) = load_key(key_path)?;
    let profile = key.validate()?;
    let ratio = compression_ratio(&key)?;
    let stdout = format!(
        "depth={} k={} rank={} pef={} ratio={}\n",
        profile.depth,
        format_k(profile.attractor_dim),
        profile.rank,
        format_pef(&profile),
        ratio
    );
    Ok(CommandResult {
        code: 0,
        stdout,
        stderr,
    })
}

pub fn find_maca_cmd(
    boundary: Boundary,
    m: usize,
    n: usize,
    min_k: u128,
) -> Result<CommandResult, CliError> {
    let hits = find_maca(boundary, m, n, min_k)?;
    let mut out = String::new();
    let _ = writeln!(out, "{:<6}{:<7}{:<10}{:<6}ratio", "rule", "depth", "k", "rank");
    for (rule, profile) in &hits {
        let ratio = caec::codec::Ratio::new(profile.attractor_dim as u64, (m * n) as u64);
        let _ = writeln!(
            out,
            "{:<6}{:<7}{:<10}{:<6}{}",
            rule,
            profile.depth,
            format_k(profile.attractor_dim),
            profile.rank,
            ratio
        );
    }
    let _ = writeln!(out, "{} rules", hits.len());
    Ok(ok(out))
}

pub fn algebra_cmd(
    boundary: Boundary,
    m: usize,
    n: usize,
    table: bool,
) -> Result<CommandResult, CliError> {
    let closure = close_generators(&basic_generators(boundary, m, n)?)?;
    let report = closure.verify_axioms();
    let mut out = report.to_string();
    if table {
        let _ = writeln!(out, "table:");
        for i in 0..closure.order() {
            let row: Vec<String> = (0..closure.order())
                .map(|j| closure.product(i, j).to_string())
                .collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
    }
    Ok(ok(out))
}

pub fn keygen_cmd(
    block_m: usize,
    block_n: usize,
    boundary: Boundary,
    rule: Option<u16>,
    enc_a: usize,
    enc_b: usize,
    out_path: &Path,
) -> Result<CommandResult, CliError> {
    let rule = match rule {
        Some(rule) => rule,
        None => {
            // Most compressive usable rule: fewest PEF bits, then lowest
            // rule number.
            let hits = find_maca(boundary, block_m, block_n, 2)?;
            let best = hits
                .iter()
                .min_by_key(|(rule, p)| (p.attractor_dim, *rule))
                .ok_or_else(|| {
                    CliError::Data(format!(
                        "no usable rules at {boundary} {block_m}x{block_n}"
                    ))
                })?;
            best.0
        }
    };
    let key = Key {
        block_m,
        block_n,
        boundary,
        rule,
        enc_a,
        enc_b,
    };
    // Round through the parser so keygen rejects exactly what key_parse
    // rejects, with the same diagnostics.
    let text = key_write(&key);
    let (_, warnings) = key_parse(&text)?;
    write_file(out_path, text.as_bytes())?;
    let profile = key.validate()?;
    let stdout = format!(
        "wrote {}: rule {rule} ({boundary} {block_m}x{block_n}), depth={} k={} ratio={}\n",
        out_path.display(),
        profile.depth,
        format_k(profile.attractor_dim),
        compression_ratio(&key)?
    );
    let mut stderr = String::new();
    for w in warnings {
        let _ = writeln!(stderr, "{w}");
    }
    Ok(CommandResult {
        code: 0,
        stdout,
        stderr,
    })
}

pub fn encompress_cmd(key_path: &Path, input: &Path, output: &Path) -> Result<CommandResult, CliError> {
    let (key, stderr) = load_key(key_path)?;
    let image = pbm_read(&read_file(input)?)?.into_state();
    let layout = plan_layout(image.rows(), image.cols(), &key)?;
    let container = encompress(&image, &key)?;
    let bytes = container.to_bytes();
    write_file(output, &bytes)?;
    let stdout = format!(
        "{} ({}x{}) -> {} ({} bytes, pef {} bits as {}x{})\n",
        input.display(),
        image.rows(),
        image.cols(),
        output.display(),
        bytes.len(),
        layout.pef_len,
        layout.p,
        layout.q,
    );
    Ok(CommandResult {
        code: 0,
        stdout,
        stderr,
    })
}

pub fn dencompress_cmd(
    key_path: &Path,
    input: &Path,
    output: &Path,
    form: PbmForm,
) -> Result<CommandResult, CliError> {
    let (key, stderr) = load_key(key_path)?;
    let container = EncompressedContainer::from_bytes(&read_file(input)?)?;
    let image = dencompress(&container, &key)?;
    let (m, n) = (image.rows(), image.cols());
    write_file(output, &pbm_write(&PbmImage::new(image), form))?;
    let stdout = format!(
        "{} -> {} ({m}x{n} image)\n",
        input.display(),
        output.display(),
    );
    Ok(CommandResult {
        code: 0,
        stdout,
        stderr,
    })
}

struct ClaimLog {
    out: String,
    deviations: usize,
}

impl ClaimLog {
    fn claim(&mut self, name: &str, holds: bool, evidence: &str) {
        if holds {
            let _ = writeln!(self.out, "claim {name}: holds");
        } else {
            self.deviations += 1;
            let _ = writeln!(self.out, "claim {name}: DEVIATES ({evidence})");
        }
    }
}

/// Machine-checks every published claim about the rule algebra and the
/// attractor structure, printing the evidence. Exits 3 when any claim
/// deviates from the computed facts.
pub fn verify_cmd(max_dim: usize, max_cells: usize) -> Result<CommandResult, CliError> {
    let mut log = ClaimLog {
        out: String::new(),
        deviations: 0,
    };

    // Non-singularity of the nine periodic fundamental matrices.
    let mut singular = Vec::new();
    for m in 1..=6 {
        for n in 1..=6 {
            for &f in &FUNDAMENTAL_RULES {
                if !caec::rules::fundamental_matrix(f, Boundary::Periodic, m, n)?.is_permutation() {
                    singular.push(format!("rule {f} at {m}x{n}"));
                }
            }
        }
    }
    log.claim(
        "periodic-fundamentals-invertible (m,n<=6)",
        singular.is_empty(),
        &singular.join("; "),
    );

    for boundary in [Boundary::Null, Boundary::Periodic] {
        for m in 1..=max_dim {
            for n in 1..=max_dim {
                let closure = close_generators(&basic_generators(boundary, m, n)?)?;
                let report = closure.verify_axioms();
                let _ = writeln!(log.out, "[algebra {boundary} {m}x{n}]");
                log.out.push_str(&report.to_string());

                let scope = format!("{boundary} {m}x{n}");
                let kind = match boundary {
                    Boundary::Null => "null-monoid",
                    Boundary::Periodic => "periodic-group",
                };
                log.claim(
                    &format!("{kind}-identity {scope}"),
                    report.identity.is_some(),
                    "no identity element",
                );
                log.claim(
                    &format!("{kind}-commutative {scope}"),
                    report.commutative,
                    &report
                        .commutative_counterexample
                        .map(|(i, j)| format!("elements {i},{j} do not commute"))
                        .unwrap_or_default(),
                );
                log.claim(
                    &format!("{kind}-cyclic {scope}"),
                    report.cyclic,
                    "no element generates the whole set",
                );
                if boundary == Boundary::Periodic {
                    log.claim(
                        &format!("{kind}-inverses {scope}"),
                        report.all_invertible,
                        &format!("non-invertible elements: {:?}", report.non_invertible),
                    );
                }
                log.claim(
                    &format!("{kind}-order==mn {scope}"),
                    report.order == m * n,
                    &format!("order={}, mn={}", report.order, m * n),
                );
            }
        }
    }

    // Attractor claims, swept over every rule at enumerable grid sizes.
    let mut instances = 0usize;
    let mut pow2_fail = Vec::new();
    let mut pef_fail = Vec::new();
    let mut pred_fail = Vec::new();
    for boundary in [Boundary::Null, Boundary::Periodic] {
        for m in 1..=max_dim {
            for n in 1..=max_dim {
                let cells = m * n;
                if cells > max_cells {
                    continue;
                }
                let mut seen = HashSet::new();
                for rule in 0..=MAX_RULE {
                    let spec = RuleSpec::new(rule, boundary, m, n)?;
                    if !seen.insert(rule_matrix(&spec)?.to_dump()) {
                        continue;
                    }
                    let profile = maca_profile(&spec)?;
                    if !profile.is_maca {
                        continue;
                    }
                    instances += 1;
                    let std = build_std(&spec)?;

                    if std.attractors.len() != 1 << profile.attractor_dim {
                        pow2_fail.push(format!("{spec}: {} attractors", std.attractors.len()));
                    }

                    let greedy = &profile.pef_positions;
                    let brute = pef_positions(&profile.attractor_basis, PefStrategy::BruteForce);
                    let mut projections = HashSet::new();
                    for a in profile.attractors() {
                        projections.insert(
                            greedy
                                .iter()
                                .fold(0u64, |acc, &p| acc << 1 | u64::from(a.vector().get(p))),
                        );
                    }
                    if greedy.len() != profile.attractor_dim
                        || brute.len() != greedy.len()
                        || projections.len() != std.attractors.len()
                    {
                        pef_fail.push(spec.to_string());
                    }

                    let mut preds = vec![0u32; std.state_count()];
                    for &next in &std.successor {
                        preds[next as usize] += 1;
                    }
                    let expected = 1u32 << (cells - profile.rank);
                    if preds.iter().any(|&c| c != 0 && c != expected) {
                        pred_fail.push(spec.to_string());
                    }
                }
            }
        }
    }
    let scope = format!("(rules 0..=511, mn<={max_cells}, {instances} MACA instances)");
    log.claim(
        &format!("maca-attractor-count-power-of-two {scope}"),
        pow2_fail.is_empty(),
        &pow2_fail.join("; "),
    );
    log.claim(
        &format!("maca-pseudo-exhaustive-field {scope}"),
        pef_fail.is_empty(),
        &pef_fail.join("; "),
    );
    log.claim(
        &format!("maca-predecessor-law {scope}"),
        pred_fail.is_empty(),
        &pred_fail.join("; "),
    );

    let deviations = log.deviations;
    let mut out = log.out;
    let _ = writeln!(out, "deviations: {deviations}");
    Ok(CommandResult {
        code: if deviations > 0 { 3 } else { 0 },
        stdout: out,
        stderr: String::new(),
    })
}
