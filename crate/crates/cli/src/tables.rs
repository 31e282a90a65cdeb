use serde_json::json;

use haarint::closedforms::{special_double_fan, stack_integral};
use haarint::integrals::xi;
use haarint::reptheory::character_table;
use haarint::symgroup::{partitions_of, DEFAULT_DEGREE_CAP};
use haarint::Error;

use crate::Outcome;

fn aligned(rows: &[(String, String)]) -> String {
    let w = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("  {k:<w$}  {v}\n"))
        .collect()
}

pub fn run(pmax: usize, json_out: bool) -> Outcome {
    if pmax > DEFAULT_DEGREE_CAP {
        return Err(Error::DegreeTooLarge {
            degree: pmax,
            cap: DEFAULT_DEGREE_CAP,
        }
        .into());
    }
    let mut primitive = Vec::new();
    let mut stacks = Vec::new();
    for p in 1..=pmax {
        let classes: Vec<_> = partitions_of(p).into_iter().rev().collect();
        primitive.push(
            classes
                .iter()
                .map(|c| (c.representative_label(), xi(c).to_string()))
                .collect::<Vec<_>>(),
        );
        let mut rows = Vec::new();
        for f in partitions_of(p) {
            let parts: Vec<u32> = f.parts().iter().map(|&x| x as u32).collect();
            rows.push((format!("Xi({f})"), stack_integral(&parts)?.to_string()));
        }
        stacks.push(rows);
    }
    let mut special = Vec::new();
    for alpha in 1..=(pmax / 2) as u32 {
        special.push((
            format!("[A_a]^{alpha}[A_b]^{alpha}"),
            special_double_fan(alpha)?.to_string(),
        ));
    }
    let chars: Vec<_> = (1..=pmax).map(character_table).collect::<Result<_, _>>()?;

    if json_out {
        let pairs = |rows: &[(String, String)]| -> Vec<serde_json::Value> {
            rows.iter()
                .map(|(k, v)| json!({ "label": k, "value": v }))
                .collect()
        };
        let doc = json!({
            "primitive": primitive.iter().enumerate().map(|(i, r)| json!({ "p": i + 1, "rows": pairs(r) })).collect::<Vec<_>>(),
            "stack": stacks.iter().enumerate().map(|(i, r)| json!({ "p": i + 1, "rows": pairs(r) })).collect::<Vec<_>>(),
            "special_double_fan": pairs(&special),
            "characters": chars,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("tables serialize")
        );
        return Ok(());
    }

    let mut out = String::new();
    out.push_str("Primitive integrals xi[c]\n");
    for (i, rows) in primitive.iter().enumerate() {
        out.push_str(&format!("p = {}\n", i + 1));
        out.push_str(&aligned(rows));
    }
    out.push_str("\nStack integrals\n");
    for (i, rows) in stacks.iter().enumerate() {
        out.push_str(&format!("p = {}\n", i + 1));
        out.push_str(&aligned(rows));
    }
    if !special.is_empty() {
        out.push_str("\nSpecial double-fan integrals\n");
        out.push_str(&aligned(&special));
    }
    out.push_str("\nCharacter tables\n");
    for t in &chars {
        out.push_str(&format!("p = {}\n{t}", t.degree));
    }
    print!("{out}");
    Ok(())
}
