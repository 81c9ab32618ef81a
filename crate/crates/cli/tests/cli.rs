mod common;

use common::{copy_corpus, p, stderr, stdout, stegkit};
use stegkit_core::{load_image, metrics::report};

#[test]
fn embed_extract_round_trip_prints_utilization() {
    let dir = tempfile::tempdir().unwrap();
    copy_corpus(dir.path());
    let stego = dir.path().join("stego.png");
    let out = stegkit(&[
        "embed",
        "--cover",
        p(&dir.path().join("pic400.jpg")),
        "--secret",
        p(&dir.path().join("rings128.png")),
        "--out",
        p(&stego),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("capacity 1280000 bits"), "{text}");
    assert!(
        text.contains("payload 393336/1280000 bits (30.7%)"),
        "{text}"
    );
    assert!(text
        .lines()
        .any(|l| l.starts_with("psnr ") && l.ends_with(" dB")));

    let recovered = dir.path().join("recovered.png");
    let out = stegkit(&["extract", "--stego", p(&stego), "--out", p(&recovered)]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("recovered 128x128"));
    assert_eq!(
        load_image(&recovered).unwrap(),
        load_image(dir.path().join("rings128.png")).unwrap()
    );
}

#[test]
fn bmp_output_and_332() {
    let dir = tempfile::tempdir().unwrap();
    copy_corpus(dir.path());
    let stego = dir.path().join("stego.bmp");
    let out = stegkit(&[
        "embed",
        "--cover",
        p(&dir.path().join("gradient580.png")),
        "--secret",
        p(&dir.path().join("noise128.png")),
        "--out",
        p(&stego),
        "--scheme",
        "332",
        "--bmp",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(&std::fs::read(&stego).unwrap()[..2], b"BM");
    let recovered = dir.path().join("r.png");
    let out = stegkit(&[
        "extract",
        "--stego",
        p(&stego),
        "--out",
        p(&recovered),
        "--scheme",
        "332",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(
        load_image(&recovered).unwrap(),
        load_image(dir.path().join("noise128.png")).unwrap()
    );

    // same stego, default scheme: scrambled header
    let out = stegkit(&["extract", "--stego", p(&stego), "--out", p(&recovered)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(
        stderr(&out).starts_with("error: bad magic"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn domain_and_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    copy_corpus(dir.path());
    let d = |n: &str| dir.path().join(n);

    let out = stegkit(&[
        "embed",
        "--cover",
        p(&d("rings128.png")),
        "--secret",
        p(&d("pic400.jpg")),
        "--out",
        p(&d("x.png")),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.starts_with("error: insufficient capacity"), "{err}");
    assert!(err.contains("3840120") && err.contains("131072"));
    assert_eq!(err.trim_end().lines().count(), 1);

    let out = stegkit(&[
        "embed",
        "--cover",
        p(&d("pic400.jpg")),
        "--secret",
        p(&d("rings128.png")),
        "--out",
        p(&d("x.png")),
        "--scheme",
        "323",
    ]);
    assert_eq!(out.status.code(), Some(2));

    let out = stegkit(&[
        "embed",
        "--cover",
        p(&d("pic400.jpg")),
        "--secret",
        p(&d("rings128.png")),
        "--out",
        p(&d("x.jpg")),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("lossy"));
    assert!(!d("x.jpg").exists());

    let out = stegkit(&[
        "extract",
        "--stego",
        p(&d("pic400.jpg")),
        "--out",
        p(&d("y.png")),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("error: bad magic"));

    let out = stegkit(&[
        "metrics",
        "--ref",
        p(&d("pic400.jpg")),
        "--test",
        p(&d("rings128.png")),
    ]);
    assert_eq!(out.status.code(), Some(1));

    let out = stegkit(&[
        "embed",
        "--cover",
        p(&d("missing.png")),
        "--secret",
        p(&d("rings128.png")),
        "--out",
        p(&d("x.png")),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("error: "));

    assert_eq!(stegkit(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(stegkit(&["embed"]).status.code(), Some(2));
}

#[test]
fn metrics_output() {
    let dir = tempfile::tempdir().unwrap();
    copy_corpus(dir.path());
    let cover = dir.path().join("pic400.jpg");
    let out = stegkit(&["metrics", "--ref", p(&cover), "--test", p(&cover)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "mse=0.0000\npsnr=inf\nnae=0.0000\nssim=1.0000\n"
    );

    let stego = dir.path().join("s.png");
    let secret = dir.path().join("noise128.png");
    assert_eq!(
        stegkit(&[
            "embed",
            "--cover",
            p(&cover),
            "--secret",
            p(&secret),
            "--out",
            p(&stego)
        ])
        .status
        .code(),
        Some(0)
    );
    let out = stegkit(&["metrics", "--ref", p(&cover), "--test", p(&stego)]);
    let r = report(&load_image(&cover).unwrap(), &load_image(&stego).unwrap()).unwrap();
    assert_eq!(
        stdout(&out),
        format!(
            "mse={:.4}\npsnr={:.4}\nnae={:.4}\nssim={:.4}\n",
            r.mse, r.psnr, r.nae, r.ssim
        )
    );
}

#[test]
fn bench_configs() {
    let dir = tempfile::tempdir().unwrap();
    copy_corpus(dir.path());
    let conf = dir.path().join("demo.conf");
    let out = stegkit(&["bench", "--config", p(&conf)]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("8 rows (8 ok, 0 skipped, 0 failed)"));
    let results = std::fs::read_to_string(dir.path().join("out/results.csv")).unwrap();
    assert_eq!(results.lines().count(), 9);
    let plot = std::fs::read_to_string(dir.path().join("out/plotdata.csv")).unwrap();
    assert_eq!(plot.lines().count(), 1 + 16);
    assert!(dir.path().join("out/pic400__rings128__233.png").exists());

    let missing = dir.path().join("missing.conf");
    std::fs::write(&missing, "cover = pic400.jpg\ncover = gone.png\nsecret = rings128.png\nscheme = 233,332\noutput_dir = out2\n").unwrap();
    let out = stegkit(&["bench", "--config", p(&missing)]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let results = std::fs::read_to_string(dir.path().join("out2/results.csv")).unwrap();
    assert_eq!(
        results.lines().filter(|l| l.contains(",failed,")).count(),
        2
    );

    let all_bad = dir.path().join("bad.conf");
    std::fs::write(
        &all_bad,
        "cover = gone.png\nsecret = rings128.png\nscheme = 233\noutput_dir = out3\n",
    )
    .unwrap();
    let out = stegkit(&["bench", "--config", p(&all_bad)]);
    assert_eq!(out.status.code(), Some(1));

    let empty = dir.path().join("empty.conf");
    std::fs::write(&empty, "# nothing\n").unwrap();
    assert_eq!(
        stegkit(&["bench", "--config", p(&empty)]).status.code(),
        Some(2)
    );
}
