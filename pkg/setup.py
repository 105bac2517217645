"""
parapac 安装脚本
"""

import os
import shutil
import subprocess
import sys

ENV_EXAMPLE = """# parapac 配置（环境变量前缀 PARAPAC_）
PARAPAC_SEED=0
PARAPAC_LOG_LEVEL=INFO
PARAPAC_LOG_FILE=
PARAPAC_BRUTE_FORCE_GUARD=10000000
PARAPAC_TERM_SEARCH_GUARD=10000000
"""


def install_requirements():
    """安装依赖"""
    print("正在安装依赖包...")
    try:
        subprocess.check_call([sys.executable, "-m", "pip", "install", "-r", "requirements.txt"])
        print("✅ 依赖安装成功")
    except subprocess.CalledProcessError as e:
        print(f"❌ 依赖安装失败: {e}")
        return False
    return True


def check_env():
    """检查环境配置"""
    print("\n检查环境配置...")

    if os.path.exists(".env"):
        print("✅ .env 文件已存在")
    elif os.path.exists(".env.example"):
        shutil.copy(".env.example", ".env")
        print("✅ 已由 .env.example 创建 .env 文件")
    else:
        with open(".env", "w", encoding="utf-8") as f:
            f.write(ENV_EXAMPLE)
        print("✅ 已创建默认 .env 文件")

    seed = os.getenv("PARAPAC_SEED")
    if seed:
        print(f"✅ PARAPAC_SEED={seed}")
    else:
        print("⚠️  PARAPAC_SEED 未设置，learn 未给出 --seed 时使用 0")


def main():
    """主函数"""
    print("=== parapac 安装程序 ===")

    if not install_requirements():
        return

    check_env()

    print("\n=== 安装完成 ===")
    print("检查一致性:")
    print("python run.py check --kind kcnf --k 1 --input instance.txt")
    print("\n运行学习实验:")
    print("python run.py learn --scenario scenario.json --epsilon 0.2 --delta 0.2 --trials 200 --out results.csv")
    print("\n或者运行测试:")
    print("python -m pytest tests/ -v")


def build_package():
    """供 pip / setuptools 构建使用的打包元数据"""
    from setuptools import find_packages, setup

    setup(
        name="parapac",
        version="1.0.0",
        packages=find_packages(include=["core", "core.*", "modules", "modules.*", "utils", "utils.*"]),
        py_modules=["run"],
        python_requires=">=3.10",
        install_requires=[
            "pydantic>=2.4.2",
            "pydantic-settings>=2.0.3",
            "loguru>=0.7.2",
            "python-dotenv>=1.0.0",
            "numpy>=1.26",
            "networkx>=3.2",
        ],
    )


if __name__ == "__main__":
    if len(sys.argv) > 1:
        build_package()
    else:
        main()
